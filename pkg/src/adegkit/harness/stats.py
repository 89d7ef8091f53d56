"""Sample sizes and significance checks for the Monte Carlo experiments."""

from __future__ import annotations

import math

from scipy.stats import binomtest


def hoeffding_n(epsilon_dev: float, delta: float) -> int:
    """Smallest N with 2 exp(-2 N eps^2) <= delta (two-sided Hoeffding)."""
    if epsilon_dev <= 0:
        raise ValueError("deviation must be positive")
    if delta >= 2:
        return 0
    if delta <= 0:
        raise ValueError("delta must be positive")
    return max(0, math.ceil(math.log(2 / delta) / (2 * epsilon_dev ** 2)))


def hoeffding_n_one_sided(epsilon_dev: float, delta: float) -> int:
    """Smallest N with exp(-2 N eps^2) <= delta."""
    if epsilon_dev <= 0:
        raise ValueError("deviation must be positive")
    if delta >= 1:
        return 0
    if delta <= 0:
        raise ValueError("delta must be positive")
    return max(0, math.ceil(math.log(1 / delta) / (2 * epsilon_dev ** 2)))


def sigma(p: float, trials: int) -> float:
    return math.sqrt(p * (1 - p) / trials) if trials else float("inf")


def z_score(successes: int, trials: int, p: float) -> float:
    """(observed - expected) / sd under Binomial(trials, p); infinite when the sd is 0."""
    if trials == 0:
        return 0.0
    diff = successes - trials * p
    sd = math.sqrt(trials * p * (1 - p))
    if sd == 0:
        return 0.0 if diff == 0 else math.copysign(math.inf, diff)
    return diff / sd


def not_below(successes: int, trials: int, p: float, sigmas: float = 3) -> bool:
    """Rate is not significantly below p at ``sigmas`` standard deviations."""
    return z_score(successes, trials, p) >= -sigmas


def within(successes: int, trials: int, p: float, sigmas: float = 3) -> bool:
    return abs(z_score(successes, trials, p)) <= sigmas


def binomial_not_below(successes: int, trials: int, p: float, level: float = 0.95) -> tuple[bool, float]:
    """One-sided exact binomial test of H0: rate >= p; passes unless rejected at ``level``."""
    if trials == 0:
        return True, 1.0
    pv = float(binomtest(successes, trials, p, alternative="less").pvalue)
    return pv >= 1 - level, pv
