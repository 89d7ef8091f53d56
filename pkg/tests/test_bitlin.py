import numpy as np
import pytest
from hypothesis import given, strategies as st

import reference
from adegkit import kernels
from adegkit.bitlin import (BitString, exists_small_xor_cover, in_span, inner_product, rank_gf2,
                            xor_subset)

B = BitString.parse


def strings(n, min_size=0, max_size=10):
    return st.lists(st.integers(0, (1 << n) - 1).map(lambda v: BitString(n, v)),
                    min_size=min_size, max_size=max_size)


def test_text_form_is_msb_first():
    s = B("0110")
    assert (s[1], s[2], s[3], s[4]) == (0, 1, 1, 0)
    assert str(s) == "0110" and s.value == 6
    assert BitString.unit(4, 1) == B("1000")


@pytest.mark.parametrize("bad", ["", "012", "1 0"])
def test_parse_rejects_junk(bad):
    with pytest.raises(ValueError):
        B(bad)


def test_inner_product_examples():
    assert inner_product(B("1010"), B("1111")) == 0
    assert inner_product(B("1101"), BitString.zeros(4)) == 0
    assert inner_product(B("111"), B("101")) == 0
    with pytest.raises(ValueError):
        inner_product(B("10"), B("101"))


def test_xor_subset_examples():
    basis = [B("100"), B("010"), B("001")]
    assert xor_subset(basis, {1, 2, 3}) == B("111")
    assert xor_subset(basis, set()) == BitString.zeros(3)
    assert xor_subset([B("101"), B("010")], {1, 2}) == B("111")
    with pytest.raises(IndexError):
        xor_subset(basis, {4})
    with pytest.raises(ValueError):
        xor_subset([], [])


def test_cover_examples(frozen):
    got = exists_small_xor_cover([B("100"), B("010"), B("001")], 3, B("111"))
    assert sorted(got) == frozen["cover_examples"]["basis3"]
    assert exists_small_xor_cover([B("110"), B("011")], 2, B("111")) is None
    assert frozen["cover_examples"]["pair_none"] is None


def test_rank_examples():
    assert rank_gf2([B("100"), B("010"), B("110")]) == 2
    assert rank_gf2([]) == 0
    assert rank_gf2([BitString.ones(5)]) == 1


def test_random_cover_agrees_with_brute_force():
    gen = np.random.default_rng(2024)
    for _ in range(5):
        vals = [BitString(16, int(v)) for v in gen.integers(0, 1 << 16, size=20)]
        target = BitString(16, int(gen.integers(0, 1 << 16)))
        texts = [str(v) for v in vals]
        got = exists_small_xor_cover(vals, 4, target)
        want = reference.smallest_cover(texts, 4, str(target))
        assert (got is None) == (want is None)
        if got is not None:
            assert len(got) <= 4 and xor_subset(vals, got) == target


@given(strings(6, max_size=8), st.integers(0, 4), st.integers(0, 63))
def test_cover_matches_brute_force(vals, d, target):
    t = BitString(6, target)
    got = exists_small_xor_cover(vals, d, t)
    want = reference.smallest_cover([str(v) for v in vals], d, str(t))
    assert (got is None) == (want is None)
    if got is not None:
        assert len(got) <= d and xor_subset(vals, got, 6) == t


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
def test_inner_product_is_linear(a, b, x):
    A, Bv, X = BitString(8, a), BitString(8, b), BitString(8, x)
    assert inner_product(A ^ Bv, X) == inner_product(A, X) ^ inner_product(Bv, X)
    assert inner_product(A, X) == reference.inner(str(A), str(X))


@given(strings(7, max_size=9), st.sets(st.integers(1, 9)), st.sets(st.integers(1, 9)))
def test_xor_subset_symmetric_difference(vals, S, T):
    S = {j for j in S if j <= len(vals)}
    T = {j for j in T if j <= len(vals)}
    assert xor_subset(vals, S, 7) ^ xor_subset(vals, T, 7) == xor_subset(vals, S ^ T, 7)


@given(strings(7, max_size=12))
def test_rank_matches_reference(vals):
    r = rank_gf2(vals)
    assert r == reference.rank([str(v) for v in vals])
    assert r <= min(len(vals), 7)


@given(strings(5, max_size=6), st.integers(0, 31))
def test_outside_span_has_no_cover(vals, target):
    t = BitString(5, target)
    if not in_span(vals, t):
        assert exists_small_xor_cover(vals, len(vals), t) is None
    else:
        assert exists_small_xor_cover(vals, len(vals), t) is not None


def test_negative_d_rejected():
    with pytest.raises(ValueError):
        exists_small_xor_cover([B("1")], -1, B("1"))


@pytest.mark.skipif(kernels.compiled is None, reason="extension not built")
@given(st.lists(st.integers(0, 2**64 - 1), max_size=14), st.integers(0, 3), st.integers(0, 2**64 - 1))
def test_compiled_kernels_agree_with_python(vals, d, target):
    arr = np.asarray(vals, dtype=np.uint64)
    assert kernels.compiled.gf2_rank(vals) == kernels.python.gf2_rank(vals)
    fast = kernels.compiled.xor_cover(arr, d, target)
    slow = kernels.python.xor_cover(vals, d, target)
    assert (fast is None) == (slow is None)
    if fast is not None:
        acc = 0
        for i in fast:
            acc ^= vals[i]
        assert acc == target and len(fast) <= d


@pytest.mark.skipif(kernels.compiled is None, reason="extension not built")
@given(st.integers(0, 2**10 - 1))
def test_compiled_char_sum_agrees(v):
    assert kernels.compiled.char_sum(v, 10) == kernels.python.char_sum(v, 10)
    assert kernels.python.char_sum(v, 10) == reference.character_sum(format(v, "010b"))


@pytest.mark.skipif(kernels.compiled is None, reason="extension not built")
@given(st.integers(0, 2**32), st.integers(16, 30), st.integers(1, 8), st.integers(8, 12))
def test_compiled_cover_agrees_at_every_depth(seed, m, d, n):
    # low-dimensional strings make covers common at every size
    gen = np.random.default_rng(seed)
    vals = [int(v) for v in gen.integers(0, 1 << n, size=m)]
    target = int(gen.integers(1, 1 << n))
    fast = kernels.compiled.xor_cover(np.asarray(vals, dtype=np.uint64), d, target)
    slow = kernels.python.xor_cover(vals, d, target)
    assert (fast is None) == (slow is None)
    if fast is not None:
        acc = 0
        for i in fast:
            acc ^= vals[i]
        assert acc == target and len(fast) <= d
