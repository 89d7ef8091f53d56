"""Exact certificates for box-constrained linear systems, guided by a float solve.

The question is whether some c satisfies lo_y <= (Z c)_y <= hi_y for every row
y (``hi_y = None`` means no upper bound).  HiGHS solves the relaxation
min t s.t. lo - t <= Z c <= hi + t and proposes either a point (t = 0) or the
dual multipliers w (t > 0).  Both are turned into exact rationals:

* a point is re-solved exactly from the constraints it makes tight, then every
  row is checked;
* multipliers are projected exactly onto {w : Z^T w = 0}; then
  sum_y max(w_y, 0) hi_y + min(w_y, 0) lo_y < 0 proves infeasibility, because
  any feasible c would give 0 = w . Z c <= that sum.

Either check may fail when the float answer was too inaccurate; callers then
fall back to the exact simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from gmpy2 import mpq

GUESS_DENOMINATOR = 1 << 24
TIGHT_TOL = 1e-7


@dataclass
class Certificate:
    feasible: bool
    point: list[Fraction] | None = None  # exact c when feasible
    multipliers: dict[int, Fraction] | None = None  # row -> w_y when infeasible
    gap: Fraction | None = None  # the negative bound proving infeasibility


class _Echelon:
    """Rows kept in echelon form over the rationals, one pivot column each."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[tuple[int, list, mpq]] = []  # (pivot, row scaled to 1 at pivot, rhs)

    def add(self, row: Sequence, rhs) -> bool:
        r = [mpq(v) for v in row]
        b = mpq(rhs)
        for p, prow, pb in self.rows:
            f = r[p]
            if f:
                for k in range(self.ncols):
                    if prow[k]:
                        r[k] -= f * prow[k]
                b -= f * pb
        piv = next((k for k in range(self.ncols) if r[k]), -1)
        if piv < 0:
            return False
        inv = 1 / r[piv]
        self.rows.append((piv, [v * inv for v in r], b * inv))
        return True

    def solve(self, guess: Sequence[Fraction]) -> list[mpq]:
        """A solution whose non-pivot coordinates equal ``guess``."""
        x = [mpq(g) for g in guess]
        for p, prow, pb in reversed(self.rows):
            acc = pb
            for k in range(self.ncols):
                if k != p and prow[k]:
                    acc -= prow[k] * x[k]
            x[p] = acc
        return x


def _rational(v: float) -> Fraction:
    return Fraction(float(v)).limit_denominator(GUESS_DENOMINATOR)


def _to_fraction(v: mpq) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def float_relaxation(Z: np.ndarray, lo: Sequence, hi: Sequence):
    """HiGHS on min t s.t. lo - t <= Z c <= hi + t.  Returns (t, c, w) with w the row multipliers."""
    from scipy.optimize import linprog

    P, M = Z.shape
    lo_f = np.array([float(v) for v in lo])
    upper = [k for k, h in enumerate(hi) if h is not None]
    hi_f = np.array([float(hi[k]) for k in upper])
    ones = np.ones((P, 1))
    A_ub = np.vstack([np.hstack([-Z, -ones]), np.hstack([Z[upper], -ones[: len(upper)]])])
    b_ub = np.concatenate([-lo_f, hi_f])
    cost = np.zeros(M + 1)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * M + [(0, None)], method="highs-ds")
    if res.status != 0:
        return None
    dual = -np.asarray(res.ineqlin.marginals)  # >= 0
    w = -dual[:P]
    w[upper] += dual[P:]
    return float(res.x[-1]), res.x[:-1], w


def certify_point(Z: np.ndarray, lo: Sequence, hi: Sequence, c: np.ndarray) -> list[Fraction] | None:
    P, M = Z.shape
    vals = Z @ c
    slack = []
    for y in range(P):
        s_lo = abs(vals[y] - float(lo[y]))
        s_hi = abs(vals[y] - float(hi[y])) if hi[y] is not None else np.inf
        if min(s_lo, s_hi) <= TIGHT_TOL * (1 + abs(vals[y])):
            slack.append((min(s_lo, s_hi), y, lo[y] if s_lo <= s_hi else hi[y]))
    slack.sort()
    ech = _Echelon(M)
    for _, y, bound in slack:
        if len(ech.rows) == M:
            break
        ech.add(Z[y], Fraction(bound))
    x = ech.solve([_rational(v) for v in c])
    exact = [_to_fraction(v) for v in x]
    Zi = Z.astype(np.int64)
    for y in range(P):
        v = sum((int(Zi[y, k]) * exact[k] for k in np.flatnonzero(Zi[y])), Fraction(0))
        if v < lo[y] or (hi[y] is not None and v > hi[y]):
            return None
    return exact


def certify_infeasible(Z: np.ndarray, lo: Sequence, hi: Sequence, w: np.ndarray):
    """Exact multipliers in the null space of Z^T near ``w``, or None."""
    P, M = Z.shape
    scale = np.max(np.abs(w)) if len(w) else 0.0
    if scale == 0:
        return None
    support = [y for y in range(P) if abs(w[y]) > 1e-9 * scale]
    # unknowns w_y on the support; one equation per column of Z
    ech = _Echelon(len(support))
    sub = Z[support].T
    for k in range(M):
        if np.any(sub[k]):
            ech.add(sub[k], 0)
    guess = [_rational(w[y] / scale) for y in support]
    x = ech.solve(guess)
    mult = {y: _to_fraction(v) for y, v in zip(support, x) if v != 0}
    gap = Fraction(0)
    for y, v in mult.items():
        if v > 0:
            if hi[y] is None:
                return None
            gap += v * Fraction(hi[y])
        else:
            gap += v * Fraction(lo[y])
    if gap >= 0:
        return None
    # exact re-check of Z^T w = 0
    for k in range(M):
        if sum((v * int(Z[y, k]) for y, v in mult.items() if Z[y, k]), Fraction(0)) != 0:
            return None
    return mult, gap


def certify(Z: np.ndarray, lo: Sequence, hi: Sequence) -> Certificate | None:
    """Exact answer for lo <= Z c <= hi from a float solve, or None if it cannot be made exact."""
    out = float_relaxation(Z, lo, hi)
    if out is None:
        return None
    t, c, w = out
    if t <= TIGHT_TOL:
        point = certify_point(Z, lo, hi, c)
        if point is not None:
            return Certificate(True, point=point)
    else:
        found = certify_infeasible(Z, lo, hi, w)
        if found is not None:
            return Certificate(False, multipliers=found[0], gap=found[1])
    return None
