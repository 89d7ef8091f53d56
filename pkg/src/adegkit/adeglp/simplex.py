"""Exact feasibility for {A x = b, lo <= x <= hi} over the rationals.

Phase 1 of the bounded-variable primal simplex on a dense tableau of
``gmpy2.mpq`` entries.  Artificial variables start basic and are discarded
as soon as they leave, so the tableau only ever holds structural columns.
Pricing is Dantzig's largest reduced cost, falling back to Bland's rule
(smallest eligible index) once pivots stop making progress, which
guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from gmpy2 import mpq

ZERO = mpq(0)


@dataclass
class SimplexResult:
    feasible: bool
    x: list | None  # rational point when feasible
    infeasibility: object  # optimal sum of artificials (0 iff feasible)
    pivots: int


def to_mpq(v) -> mpq:
    if isinstance(v, float):
        return mpq(v)  # exact binary value; callers pass rationals where it matters
    return mpq(v)


def feasible_point(A: Sequence[Sequence], b: Sequence, lo: Sequence, hi: Sequence,
                   max_pivots: int = 1_000_000) -> SimplexResult:
    """Find x with A x = b and lo <= x <= hi; ``hi[j] = None`` means unbounded above.

    Every lower bound must be finite.
    """
    A = np.array([[to_mpq(v) for v in row] for row in A], dtype=object).reshape(len(b), len(lo))
    m, n = A.shape
    lo_q = np.array([to_mpq(v) for v in lo], dtype=object)
    has_ub = np.array([h is not None for h in hi], dtype=bool)
    ub = np.array([to_mpq(h) - lo_q[j] if h is not None else ZERO for j, h in enumerate(hi)], dtype=object)
    if np.any(has_ub) and any(ub[j] < 0 for j in np.flatnonzero(has_ub)):
        return SimplexResult(False, None, mpq(1), 0)

    # shift x = lo + w, 0 <= w <= ub
    rhs = np.array([to_mpq(v) for v in b], dtype=object)
    if n:
        rhs = rhs - A.dot(lo_q) if m else rhs
    for i in range(m):
        if rhs[i] < 0:
            rhs[i] = -rhs[i]
            A[i] = -A[i]

    T = A.copy()
    beta = rhs.copy()
    basis = [-1 - i for i in range(m)]  # negative codes: artificial of row i
    in_basis = np.zeros(n, dtype=bool)
    at_upper = np.zeros(n, dtype=bool)

    # crash: a column living in a single row can start basic there when the
    # value it takes respects its bounds, saving that row an artificial
    nz_rows = [np.flatnonzero(T[:, j] != 0) for j in range(n)]
    for j in range(n):
        if len(nz_rows[j]) != 1:
            continue
        i = int(nz_rows[j][0])
        if basis[i] >= 0:
            continue
        val = beta[i] / T[i, j]
        if val >= 0 and (not has_ub[j] or val <= ub[j]):
            T[i] = T[i] / T[i, j]
            beta[i] = val
            basis[i] = j
            in_basis[j] = True

    art = np.array([basis[i] < 0 for i in range(m)], dtype=bool)
    d = -T[art].sum(axis=0) if art.any() else np.zeros(n, dtype=object)
    d = np.array([mpq(v) for v in d], dtype=object) if n else d
    pivots = 0
    stalled = 0
    stall_limit = 50

    def objective():
        return sum((beta[i] for i in range(m) if basis[i] < 0), ZERO)

    while True:
        if pivots > max_pivots:
            raise RuntimeError("simplex pivot limit exceeded")
        # Dantzig's rule while the objective moves; Bland's rule after a run of
        # degenerate pivots, which rules out cycling
        bland = stalled >= stall_limit
        j = -1
        best_gain = ZERO
        for cand in range(n):
            if in_basis[cand]:
                continue
            dc = d[cand]
            if at_upper[cand]:
                gain = dc
            elif not has_ub[cand] or ub[cand] > 0:
                gain = -dc
            else:
                continue
            if gain > best_gain:
                j, best_gain = cand, gain
                if bland:
                    break
        if j < 0:
            break
        s = -1 if at_upper[j] else 1
        col = T[:, j]
        best = None
        r = -1
        leave_upper = False
        for i in range(m):
            g = col[i] if s > 0 else -col[i]
            if g > 0:
                theta = beta[i] / g
                to_upper = False
            elif g < 0 and basis[i] >= 0 and has_ub[basis[i]]:
                theta = (ub[basis[i]] - beta[i]) / (-g)
                to_upper = True
            else:
                continue
            key = basis[i] if basis[i] >= 0 else n + (-1 - basis[i])
            if best is None or theta < best or (theta == best and key < best_key):
                best, r, leave_upper, best_key = theta, i, to_upper, key
        if has_ub[j] and (best is None or ub[j] <= best):
            # bound flip, no basis change
            step = ub[j]
            stalled = 0 if step > 0 else stalled + 1
            beta = beta - col * (s * step)
            at_upper[j] = not at_upper[j]
            pivots += 1
            continue
        if best is None:
            raise RuntimeError("phase 1 unbounded; this cannot happen for a valid tableau")
        theta = best
        stalled = 0 if theta > 0 else stalled + 1
        entering_value = (ub[j] if at_upper[j] else ZERO) + s * theta
        beta = beta - col * (s * theta)
        leaving = basis[r]
        piv = T[r, j]
        T[r] = T[r] / piv
        nz = [i for i in range(m) if i != r and T[i, j] != 0]
        if nz:
            T[nz] = T[nz] - np.outer(T[nz, j], T[r])
        if d[j] != 0:
            d = d - d[j] * T[r]
        beta[r] = entering_value
        basis[r] = j
        in_basis[j] = True
        at_upper[j] = False
        if leaving >= 0:
            in_basis[leaving] = False
            at_upper[leaving] = leave_upper
        pivots += 1

    value = objective()
    if value != 0:
        return SimplexResult(False, None, value, pivots)
    w = np.array([ub[k] if at_upper[k] else ZERO for k in range(n)], dtype=object)
    for i in range(m):
        if basis[i] >= 0:
            w[basis[i]] = beta[i]
    x = [lo_q[k] + w[k] for k in range(n)]
    return SimplexResult(True, x, ZERO, pivots)
