import math

import pytest
from hypothesis import given, strategies as st

from adegkit.noisy import (BudgetExhausted, exact_comparator, iid_comparator, internal_budget, noisy_search,
                           unit_budget)
from adegkit.rng import SplitMix64


@given(st.sampled_from([2, 4, 8, 16, 64, 256]), st.data(), st.integers(1, 4))
def test_exact_comparator_always_correct(n, data, c):
    key = data.draw(st.integers(1, n))
    asked = []

    def compare(a):
        asked.append(a)
        return key > a

    res = noisy_search(compare, n, c, repeats=1)
    assert res.location == key
    if c >= 2:
        assert res.confident
    # distinct questions on the way down: one per level plus the endpoint checks
    assert len(set(asked)) <= 3 * int(math.log2(n))


def test_single_question_decides_n2():
    seen = []

    def compare(a):
        seen.append(a)
        return 1 > a

    assert noisy_search(compare, 2, 1, repeats=1).location == 1
    assert set(seen) == {1}


def test_n1_needs_no_questions():
    res = noisy_search(exact_comparator(1), 1, 3)
    assert res.location == 1 and res.questions == 0


def test_budgets_respected_under_noise():
    n, c = 64, 20
    for k in range(200):
        rng = SplitMix64(k)
        key = 1 + rng.randrange(n)
        res = noisy_search(iid_comparator(key, 0.75, rng), n, c)
        assert max(res.tallies.values()) <= internal_budget(n, c)
        assert res.questions <= unit_budget(n, c) * 2 * (n - 1)


def test_always_wrong_comparator_is_contained():
    res = noisy_search(lambda a: not (5 > a), 8, 2, repeats=1)
    assert 1 <= res.location <= 8
    assert max(res.tallies.values()) <= internal_budget(8, 2)


def test_bad_parameters():
    with pytest.raises(ValueError):
        noisy_search(exact_comparator(1), 6, 1)
    with pytest.raises(ValueError):
        noisy_search(exact_comparator(1), 8, 0)


def test_budget_exhausted_is_an_error_type():
    assert issubclass(BudgetExhausted, RuntimeError)
