"""Approximate and threshold degree of small partial Boolean functions."""

from .functions import (BUILDERS, PartialBoolFn, make_ahs, make_gt_table, make_hs, make_os,
                        make_parity)
from .lp import (CapExceeded, DegreeQuery, FeasibilityResult, SolverFailure, feasible, min_degree,
                 min_degree_result, threshold_feasible, verify, verify_threshold)

__all__ = [
    "BUILDERS", "CapExceeded", "DegreeQuery", "FeasibilityResult", "PartialBoolFn", "SolverFailure",
    "feasible", "make_ahs", "make_gt_table", "make_hs", "make_os", "make_parity", "min_degree",
    "min_degree_result", "threshold_feasible", "verify", "verify_threshold",
]
