"""Probability thresholds and default constants used by the experiments, in one place."""

from __future__ import annotations

from fractions import Fraction

# name -> (value, where it comes from)
THRESHOLDS: dict[str, tuple[Fraction, str]] = {
    "gt_uniform_deviation": (Fraction(1, 6), "Claim 3.1: |q - GT_i(x)| <= 1/6 for all (i, x)"),
    "gt_per_copy_slack": (Fraction(1, 12), "Claim 3.1 proof: Hoeffding step at 1/12 + 1/12"),
    "good_sample_rate": (Fraction(2, 3), "Claims 3.1 and 3.3: the good event has probability >= 2/3"),
    "noisy_search_success": (Fraction(11, 12), "Claim B.1: correct location with probability >= 11/12"),
    "noisy_answer_accuracy": (Fraction(3, 4), "Claim B.1: each answer correct with probability >= 3/4"),
}

GT_UNIFORM_DEVIATION = THRESHOLDS["gt_uniform_deviation"][0]
GT_PER_COPY_SLACK = THRESHOLDS["gt_per_copy_slack"][0]
GOOD_SAMPLE_RATE = THRESHOLDS["good_sample_rate"][0]
NOISY_SEARCH_SUCCESS = THRESHOLDS["noisy_search_success"][0]
NOISY_ANSWER_ACCURACY = THRESHOLDS["noisy_answer_accuracy"][0]

# copies per base: t = ceil(factor * n * ln 2)
OS_T_FACTOR = 250
AHS_T_FACTOR = 1000
AHS_ALPHA = 4
OSPP_ALPHA = 2

# smallest c for which the noisy search reached 11/12 with margin at p = 3/4 (n = 64 and 256)
CALIBRATED_C = 20

SIGMAS = 3
