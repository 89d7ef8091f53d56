"""Search for a key in (0, n] with unreliable "is the key > a?" answers.

The walk lives on the dyadic interval tree.  At an internal node it first
checks that the key is still inside the node (otherwise it backs up), then
descends by the midpoint answer.  At a unit interval it keeps a confirmation
counter: consistent endpoint answers raise it, inconsistent ones lower it and
at zero send the walk back to the parent.  Every question is a majority vote
over ``repeats`` asks, and the walk takes ``floor(c * log2(n) / repeats)``
steps, so no single question is ever asked more than ``c * log2(n)`` times.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .goodbase import log2_exact

Comparator = Callable[[int], bool]


class BudgetExhausted(RuntimeError):
    """A question was asked more often than its provisioned budget."""


@dataclass
class SearchResult:
    location: int  # key lies in (location - 1, location]
    confident: bool
    steps: int
    questions: int
    tallies: Counter = field(default_factory=Counter)


@dataclass
class NoisySearchState:
    lo: int
    hi: int
    step_budget: int
    counter: int = 0
    tallies: Counter = field(default_factory=Counter)


def default_repeats(c: int) -> int:
    return max(1, min(5, c))


def noisy_search(comparator: Comparator, n: int, c: int, repeats: int | None = None) -> SearchResult:
    """Locate the key; ``comparator(a)`` answers "key > a" for 0 < a < n."""
    log_n = log2_exact(n)
    if c < 1:
        raise ValueError("c must be positive")
    if n == 1:
        return SearchResult(1, True, 0, 0)
    per_question = c * log_n
    repeats = default_repeats(c) if repeats is None else repeats
    repeats = max(1, min(repeats, per_question))
    state = NoisySearchState(0, n, per_question // repeats)
    confirmations: Counter = Counter()

    def ask(a: int) -> bool:
        if a <= 0:
            return True
        if a >= n:
            return False
        yes = 0
        for _ in range(repeats):
            state.tallies[a] += 1
            if state.tallies[a] > per_question:
                raise BudgetExhausted(f"question > {a} over budget")
            yes += bool(comparator(a))
        return 2 * yes > repeats

    def up() -> None:
        w = state.hi - state.lo
        if w == n:
            return
        lo = state.lo - state.lo % (2 * w)
        state.lo, state.hi = lo, lo + 2 * w

    for _ in range(state.step_budget):
        lo, hi = state.lo, state.hi
        inside = ask(lo) and not ask(hi)
        if hi - lo == 1:
            if inside:
                state.counter += 1
                confirmations[hi] += 1
            elif state.counter > 0:
                state.counter -= 1
            else:
                up()
        elif not inside:
            up()
        else:
            mid = (lo + hi) // 2
            if ask(mid):
                state.lo = mid
            else:
                state.hi = mid

    questions = sum(state.tallies.values())
    steps = state.step_budget
    if state.hi - state.lo == 1:
        return SearchResult(state.hi, state.counter > 0, steps, questions, state.tallies)
    if confirmations:
        best = max(sorted(confirmations), key=lambda k: confirmations[k])
        return SearchResult(best, False, steps, questions, state.tallies)
    return SearchResult(state.lo + 1, False, steps, questions, state.tallies)


def iid_comparator(key: int, p: float, rng) -> Comparator:
    """Answers "key > a" correctly with probability ``p``, independently each time."""

    def compare(a: int) -> bool:
        truth = key > a
        return truth if rng.random() < p else not truth

    return compare


def exact_comparator(key: int) -> Comparator:
    return lambda a: key > a


def internal_budget(n: int, c: int) -> int:
    return c * int(math.log2(n))


def unit_budget(n: int, c: int) -> int:
    return 2 * c * c * int(math.log2(n)) ** 2
