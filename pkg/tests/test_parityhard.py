import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

import reference
from adegkit.bitlin import BitString
from adegkit.goodbase import BaseSpec, Sample, Slot, assemble, build_os_base, sample
from adegkit.parityhard import (CrapInstance, bad_subset_probability, character_sum, classify_indices,
                                crap_eval, default_d, has_bad_subset, index_frequencies,
                                monomial_orthogonality)

FIGURE5 = [0b11110010, 0b11100000, 0b10110010, 0b01000000]
FIGURE5_T = [9, 10, 11, 12, 3, 5]


def figure5_base():
    return assemble(8, FIGURE5, 1)


def test_figure5_types(frozen):
    report = classify_indices(figure5_base(), FIGURE5_T)
    assert list(report.types) == frozen["figure5"]["types"]
    assert [str(p) for p in report.one_probabilities] == frozen["figure5"]["probabilities"]
    assert report.probability == 0
    assert report.counts == {"I": 5, "II": 1, "III": 2}


def test_figure5_frequencies_within_three_sigma():
    base = figure5_base()
    draws = 20_000
    ones, hits = index_frequencies(base, FIGURE5_T, draws, np.random.default_rng(5))
    report = classify_indices(base, FIGURE5_T)
    for k, p in enumerate(report.one_probabilities):
        sigma = math.sqrt(draws * float(p) * (1 - float(p)))
        assert abs(ones[k] - draws * float(p)) <= 3 * sigma
    assert hits == 0


def test_basis_only_subset():
    base = assemble(5, [], 0)
    report = classify_indices(base, range(1, 6))
    assert report.types == ("II",) * 5 and report.probability == 1


def test_single_full_template():
    base = BaseSpec(6, (Slot("free", 63),), ())
    report = classify_indices(base, [1])
    assert report.types == ("I",) * 6 and report.probability == Fraction(1, 64)


def test_crap_eval_is_parity():
    inst = CrapInstance(sample(build_os_base(8, 1, 1), np.random.default_rng(0)))
    assert crap_eval(inst, BitString.zeros(8)) == 0
    inst7 = CrapInstance(sample(assemble(7, [], 0), np.random.default_rng(0)))
    assert crap_eval(inst7, BitString.ones(7)) == 1
    for v in range(256):
        assert crap_eval(inst, BitString(8, v)) == bin(v).count("1") % 2


def test_crap_requires_basis_head():
    base = BaseSpec(2, (Slot("fixed", 1), Slot("fixed", 2)), ())
    with pytest.raises(ValueError):
        CrapInstance(Sample(base, np.array([1, 2], dtype=np.uint64)))


def test_character_sum_examples():
    base = assemble(3, [], 0)
    s = sample(base, np.random.default_rng(0))
    assert character_sum(s, [1, 2, 3]) == 8
    assert character_sum(s, [1, 2]) == 0
    assert reference.character_sum("01") == 0
    with pytest.raises(ValueError):
        character_sum(s, [1], method="fourier")


@given(st.integers(2, 10), st.integers(0, 2**32), st.lists(st.integers(1, 60), max_size=6))
def test_character_sum_closed_form(n, seed, T):
    base = build_os_base(n, 1, 6)
    s = sample(base, np.random.default_rng(seed))
    T = [j for j in T if j <= base.m]
    direct = character_sum(s, T, "direct")
    assert direct == character_sum(s, T, "closed")
    acc = reference.xor_texts([str(s.string(j)) for j in set(T) if T.count(j) % 2], n)
    assert direct == reference.character_sum(reference.xor_texts([acc, "1" * n], n))


def test_bad_subset_basis_only():
    base = assemble(6, [], 0)
    gen = np.random.default_rng(0)
    assert bad_subset_probability(base, 6, 20, gen).frequency == 0
    assert bad_subset_probability(base, 5, 20, gen).frequency == 1


@given(st.integers(0, 2**32))
def test_bad_subset_monotone_in_d(seed):
    s = sample(build_os_base(8, 1, 2), np.random.default_rng(seed))
    flags = [has_bad_subset(s, d) for d in range(9)]
    assert flags == sorted(flags)
    assert flags[8]


def test_monomials_orthogonal_without_bad_subset():
    gen = np.random.default_rng(4)
    for _ in range(5):
        s = sample(build_os_base(8, 1, 2), gen)
        d = 2
        checked, nonzero = monomial_orthogonality(s, d)
        assert checked == sum(math.comb(s.base.m, k) for k in range(d + 1))
        assert bool(nonzero) == has_bad_subset(s, d)


def test_default_d_clamps():
    assert default_d(16, 64) == (0, -1)
    assert default_d(1024, 1024) == (24, 24)
