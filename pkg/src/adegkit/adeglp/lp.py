"""Approximate degree and threshold degree as LP feasibility questions.

Polynomials are multilinear over {0,1}^N in the monomial basis: a subset S of
inputs (packed like a point) contributes c_S * prod_{k in S} y_k, so
p(y) = sum of c_S over S contained in y.

Full mode asks for |p - f| <= eps on the domain and -eps <= p <= 1 + eps on
the rest of the cube; DomainOnly mode drops the ambient bounds.  Both are
encoded over the coefficients (split as c+ - c-) with one boxed slack per
constrained point: p(y) - s_y = 0, lo_y <= s_y <= hi_y.  The slacks are
singleton columns, so most rows start with a feasible basic variable.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

import numpy as np
from gmpy2 import mpq

from .functions import PartialBoolFn
from .certify import certify
from .simplex import feasible_point

FULL_CAP = 16
MONOMIAL_CAP = 1 << 17
RATIONAL_SIZE_CAP = 120_000  # rows x columns handled by "auto" with the exact backend
FLOAT_TOL = 1e-9
ESCALATE_MARGIN = 1e-6

MODES = ("full", "domain")
BACKENDS = ("auto", "rational", "simplex", "float")


class CapExceeded(ValueError):
    pass


class SolverFailure(RuntimeError):
    pass


def as_fraction(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


@dataclass(frozen=True)
class DegreeQuery:
    f: PartialBoolFn
    d: int
    epsilon: Fraction
    mode: str = "full"

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if not 0 <= self.epsilon < Fraction(1, 2):
            raise ValueError("epsilon must lie in [0, 1/2)")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.d < 0:
            raise ValueError("degree must be non-negative")
        if self.mode == "full" and self.f.N > FULL_CAP:
            raise CapExceeded(f"full mode enumerates 2^{self.f.N} points; cap is 2^{FULL_CAP}")


@dataclass
class FeasibilityResult:
    feasible: bool
    backend: str
    certificate: dict[int, Fraction] | None = None  # subset mask -> coefficient
    margin: float | None = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.feasible

    @property
    def certificate_hash(self) -> str | None:
        if self.certificate is None:
            return None
        text = ";".join(f"{k}:{v.numerator}/{v.denominator}" for k, v in sorted(self.certificate.items()))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------- polynomial helpers

def masks_upto(N: int, d: int) -> list[int]:
    """Subsets of size <= d, by size then lexicographic position."""
    out = []
    for k in range(min(d, N) + 1):
        for idx in combinations(range(N), k):
            out.append(sum(1 << (N - 1 - i) for i in idx))
    return out


def monomial_count(N: int, d: int) -> int:
    return sum(math.comb(N, k) for k in range(min(d, N) + 1))


def moebius(values: list) -> list:  # inverse of evaluate_all
    """Coefficients c_S from the values v_y of a multilinear polynomial on the cube."""
    c = list(values)
    size = len(c)
    bit = 1
    while bit < size:
        for y in range(size):
            if y & bit:
                c[y] -= c[y ^ bit]
        bit <<= 1
    return c


def evaluate(coeffs: Mapping[int, Fraction], point: int) -> Fraction:
    return sum((c for s, c in coeffs.items() if s & point == s), Fraction(0))


def evaluate_all(coeffs: Mapping[int, Fraction], N: int) -> list[Fraction]:
    """p at every point of the cube (zeta transform)."""
    vals = [Fraction(0)] * (1 << N)
    for s, c in coeffs.items():
        vals[s] += c
    bit = 1
    while bit < (1 << N):
        for y in range(1 << N):
            if y & bit:
                vals[y] += vals[y ^ bit]
        bit <<= 1
    return vals


def degree(coeffs: Mapping[int, Fraction]) -> int:
    return max((s.bit_count() for s, c in coeffs.items() if c != 0), default=0)


def verify(query: DegreeQuery, coeffs: Mapping[int, Fraction], tol: Fraction = Fraction(0)) -> bool:
    """Exact check of an approximation certificate, with optional slack ``tol``."""
    if degree(coeffs) > query.d:
        return False
    eps = query.epsilon + tol
    f = query.f
    if query.mode == "full":
        vals = evaluate_all(coeffs, f.N)
        dom = dict(f.domain)
        for y, v in enumerate(vals):
            if y in dom:
                if abs(v - dom[y]) > eps:
                    return False
            elif v < -eps or v > 1 + eps:
                return False
        return True
    return all(abs(evaluate(coeffs, y) - val) <= eps for y, val in f.domain)


def verify_threshold(f: PartialBoolFn, d: int, coeffs: Mapping[int, Fraction]) -> bool:
    """q signs f: q(y) > 0 where f = 1 and q(y) < 0 where f = 0."""
    if degree(coeffs) > d:
        return False
    for y, val in f.domain:
        q = evaluate(coeffs, y)
        if (q > 0) != bool(val) or q == 0:
            return False
    return True


# ---------------------------------------------------------------- LP encodings

@dataclass
class LinearSystem:
    A: list[list]
    b: list
    lo: list
    hi: list


def point_bounds(query: DegreeQuery) -> list[tuple[int, Fraction, Fraction]]:
    """(point, lower, upper) for every point the query constrains."""
    f, eps = query.f, query.epsilon
    if query.mode == "domain":
        return [(y, v - eps, v + eps) for y, v in f.domain]
    dom = dict(f.domain)
    out = []
    for y in range(1 << f.N):
        if y in dom:
            out.append((y, dom[y] - eps, dom[y] + eps))
        else:
            out.append((y, -eps, 1 + eps))
    return out


def _coef_system(N: int, d: int, points: list[tuple], sign: list[int] | None = None):
    """Rows sign_y * p(y) - s_y = 0; p split as c+ - c- (both >= 0), s_y boxed."""
    monos = masks_upto(N, d)
    M = len(monos)
    P = len(points)
    A = []
    for r, (y, _, _) in enumerate(points):
        g = 1 if sign is None else sign[r]
        row = [0] * (2 * M + P)
        for k, S in enumerate(monos):
            if S & y == S:
                row[k] = g
                row[M + k] = -g
        row[2 * M + r] = -1
        A.append(row)
    lo = [0] * (2 * M) + [pt[1] for pt in points]
    hi = [None] * (2 * M) + [pt[2] for pt in points]
    return LinearSystem(A, [0] * P, lo, hi), monos


def _exact_size(rows: int, N: int, d: int) -> int:
    return rows * (2 * monomial_count(N, d) + rows)


def _check_caps(f: PartialBoolFn, d: int) -> None:
    if monomial_count(f.N, d) > MONOMIAL_CAP:
        raise CapExceeded(f"{monomial_count(f.N, d)} monomials exceed the cap {MONOMIAL_CAP}")


def _coeffs_from_solution(x: list, monos) -> dict[int, Fraction]:
    M = len(monos)
    out = {}
    for k, S in enumerate(monos):
        v = x[k] - x[M + k]
        if v != 0:
            out[S] = Fraction(int(v.numerator), int(v.denominator))
    return out


def _zeta_matrix(points: list[int], monos: list[int]) -> np.ndarray:
    pts = np.asarray(points, dtype=np.int64)[:, None]
    ms = np.asarray(monos, dtype=np.int64)[None, :]
    return ((pts & ms) == ms).astype(float)


def _exact(points: list[tuple], monos: list[int], sign: list[int] | None, N: int, d: int, use_float: bool):
    """(feasible, coeffs, how): float-guided certificate first, exact simplex as the fallback."""
    if use_float:
        Z = _zeta_matrix([pt[0] for pt in points], monos)
        if sign is not None:
            Z = Z * np.asarray(sign, dtype=float)[:, None]
        cert = certify(Z, [pt[1] for pt in points], [pt[2] for pt in points])
        if cert is not None:
            if cert.feasible:
                return True, {S: v for S, v in zip(monos, cert.point) if v != 0}, "certificate"
            return False, None, "farkas"
    system, _ = _coef_system(N, d, points, sign)
    sol = feasible_point(system.A, system.b, system.lo, system.hi)
    if not sol.feasible:
        return False, None, "simplex"
    return True, _coeffs_from_solution(sol.x, monos), "simplex"


def _float_min_violation(points: list[tuple], monos: list[int]):
    """min t >= 0 with lo_y - t <= p(y) <= hi_y + t at every listed point."""
    from scipy.optimize import linprog

    Z = _zeta_matrix([pt[0] for pt in points], monos)
    lo = np.array([float(pt[1]) for pt in points])
    hi = np.array([float(pt[2]) for pt in points])
    ones = np.ones((len(points), 1))
    A_ub = np.vstack([np.hstack([Z, -ones]), np.hstack([-Z, -ones])])
    b_ub = np.concatenate([hi, -lo])
    cost = np.zeros(len(monos) + 1)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * len(monos) + [(0, None)], method="highs")
    if res.status != 0:
        raise SolverFailure(f"HiGHS status {res.status}: {res.message}")
    return float(res.x[-1]), res.x[:-1]


def _rounded(monos, x) -> dict[int, Fraction]:
    return {S: Fraction(float(v)).limit_denominator(1 << 40) for S, v in zip(monos, x) if abs(v) > 1e-13}


def feasible(query: DegreeQuery, backend: str = "auto") -> FeasibilityResult:
    """Is there a degree-<= d polynomial eps-approximating f (in the query's mode)?"""
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}")
    f = query.f
    _check_caps(f, query.d)
    points = point_bounds(query)
    if backend == "auto":
        backend = "rational" if _exact_size(len(points), f.N, query.d) <= RATIONAL_SIZE_CAP else "float"
    if backend == "float":
        monos = masks_upto(f.N, query.d)
        t, x = _float_min_violation(points, monos)
        if t > ESCALATE_MARGIN:
            return FeasibilityResult(False, "float", margin=t)
        if t <= FLOAT_TOL:
            coeffs = _rounded(monos, x)
            if verify(query, coeffs, Fraction(1, 10**9)):
                return FeasibilityResult(True, "float", coeffs, margin=t)
        note = f"float violation {t:.3g} inside the escalation band; re-solved exactly"
        result = feasible(query, "rational")
        result.notes.append(note)
        result.backend = "float+rational"
        return result
    monos = masks_upto(f.N, query.d)
    ok, coeffs, how = _exact(points, monos, None, f.N, query.d, backend == "rational")
    if not ok:
        return FeasibilityResult(False, backend, notes=[f"infeasibility proved by {how}"])
    if not verify(query, coeffs):
        raise SolverFailure("rational certificate failed exact verification")
    return FeasibilityResult(True, backend, coeffs, margin=0.0, notes=[f"point found by {how}"])


def min_degree(f: PartialBoolFn, epsilon, mode: str = "full", backend: str = "auto") -> int:
    """Least d for which :func:`feasible` holds, by ascending scan."""
    return min_degree_result(f, epsilon, mode, backend)[0]


def min_degree_result(f: PartialBoolFn, epsilon, mode: str = "full",
                      backend: str = "auto") -> tuple[int, FeasibilityResult]:
    for d in range(f.N + 1):
        res = feasible(DegreeQuery(f, d, epsilon, mode), backend)
        if res.feasible:
            return d, res
    raise SolverFailure(f"no feasible degree up to N = {f.N}; interpolation should always succeed")


def threshold_feasible(f: PartialBoolFn, d: int, backend: str = "auto") -> FeasibilityResult:
    """Is there q of degree <= d with (2 f(y) - 1) q(y) >= 1 on every domain point?

    The right-hand side 1 can stand for any positive margin since the
    constraints are invariant under scaling q.
    """
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}")
    _check_caps(f, d)
    sign = [2 * v - 1 for _, v in f.domain]
    points = [(y, 1, None) for y, _ in f.domain]
    if backend == "auto":
        backend = "rational" if _exact_size(len(points), f.N, d) <= RATIONAL_SIZE_CAP else "float"
    if backend == "float":
        monos = masks_upto(f.N, d)
        t, x = _float_threshold(f, monos, sign)
        if t > ESCALATE_MARGIN:
            return FeasibilityResult(False, "float", margin=t)
        coeffs = _rounded(monos, x)
        if t <= FLOAT_TOL and verify_threshold(f, d, coeffs):
            return FeasibilityResult(True, "float", coeffs, margin=t)
        res = threshold_feasible(f, d, "rational")
        res.backend = "float+rational"
        return res
    monos = masks_upto(f.N, d)
    ok, coeffs, how = _exact(points, monos, sign, f.N, d, backend == "rational")
    if not ok:
        return FeasibilityResult(False, backend, notes=[f"infeasibility proved by {how}"])
    if not verify_threshold(f, d, coeffs):
        raise SolverFailure("threshold certificate failed exact verification")
    return FeasibilityResult(True, backend, coeffs, margin=0.0, notes=[f"point found by {how}"])


def _float_threshold(f: PartialBoolFn, monos, sign):
    """min t >= 0 with sign_y q(y) + t >= 1; t = 0 iff a sign representation exists."""
    from scipy.optimize import linprog

    M = len(monos)
    Z = _zeta_matrix([y for y, _ in f.domain], monos)
    A = np.hstack([-np.asarray(sign, dtype=float)[:, None] * Z, -np.ones((len(f.domain), 1))])
    cost = np.zeros(M + 1)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=A, b_ub=-np.ones(len(f.domain)),
                  bounds=[(None, None)] * M + [(0, None)], method="highs")
    if res.status != 0:
        raise SolverFailure(f"HiGHS status {res.status}: {res.message}")
    return float(res.x[-1]), res.x[:-1]
