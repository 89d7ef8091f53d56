"""Parity under a sampled base: character sums, index types and bad subsets.

A subset T of slots is *bad* when the XOR of its strings is 1^n.  Exactly
then the monomial over T correlates with parity(x) on the oracle's image;
every other low-degree monomial is orthogonal to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .bitlin import BitString, cover_array
from .goodbase import BaseSpec, Sample, sample as draw_sample
from .oracle import oracle_bits

DIRECT_SUM_CAP = 20


@dataclass(frozen=True)
class CrapInstance:
    """Parity of x read off the oracle image through the basis slots."""

    sample: Sample

    def __post_init__(self) -> None:
        n = self.sample.base.n
        head = [int(v) for v in self.sample.strings[:n]]
        if head != [1 << (n - k) for k in range(1, n + 1)]:
            raise ValueError("the first n slots must hold the standard basis")


def crap_eval(instance: CrapInstance, x: BitString) -> int:
    n = instance.sample.base.n
    bits = oracle_bits(instance.sample.strings[:n], x.value)
    return int(np.bitwise_xor.reduce(bits))


def _xor_of(sample: Sample, T: Iterable[int]) -> int:
    acc = 0
    m = sample.base.m
    for j in T:
        if not 1 <= j <= m:
            raise IndexError(f"slot {j} outside 1..{m}")
        acc ^= int(sample.strings[j - 1])
    return acc


def character_sum(sample: Sample, T: Iterable[int], method: str = "both",
                  cap: int = DIRECT_SUM_CAP) -> int:
    """Sum over x of (-1)^<x, 1^n xor XOR_T r_j>.

    ``method`` is "closed" (2^n iff the XOR is 1^n, else 0), "direct" (all 2^n
    terms) or "both", which computes both and insists they agree.
    """
    n = sample.base.n
    full = (1 << n) - 1
    v = full ^ _xor_of(sample, T)
    closed = (1 << n) if v == 0 else 0
    if method == "closed":
        return closed
    if method not in ("direct", "both"):
        raise ValueError(f"unknown method {method!r}")
    if n > cap:
        raise ValueError(f"direct summation over 2^{n} points exceeds the cap 2^{cap}")
    direct = kernels.char_sum(v, n)
    if method == "both" and direct != closed:
        raise AssertionError(f"character sum mismatch: direct {direct}, closed form {closed}")
    return direct


@dataclass(frozen=True)
class IndexTypeReport:
    types: tuple[str, ...]
    one_probabilities: tuple[Fraction, ...]
    probability: Fraction  # Pr_r[XOR_T r = 1^n]

    @property
    def counts(self) -> dict[str, int]:
        return {k: self.types.count(k) for k in ("I", "II", "III")}


def classify_indices(base: BaseSpec, T: Iterable[int]) -> IndexTypeReport:
    """Type I: a free slot in T covers k.  Otherwise the bit is fixed:
    Type II when it is 1, Type III when it is 0."""
    n = base.n
    T = sorted(set(T))
    free_cover = 0
    fixed_xor = 0
    for j in T:
        if not 1 <= j <= base.m:
            raise IndexError(f"slot {j} outside 1..{base.m}")
        slot = base.slots[j - 1]
        if slot.kind == "free":
            free_cover |= slot.value
        else:
            fixed_xor ^= slot.value
    types = []
    probs = []
    for k in range(1, n + 1):
        bit = 1 << (n - k)
        if free_cover & bit:
            types.append("I")
            probs.append(Fraction(1, 2))
        elif fixed_xor & bit:
            types.append("II")
            probs.append(Fraction(1))
        else:
            types.append("III")
            probs.append(Fraction(0))
    total = Fraction(1)
    for p in probs:
        total *= p
    return IndexTypeReport(tuple(types), tuple(probs), total)


def default_d(n: int, m: int) -> tuple[int, int]:
    """(clamped, raw) degree bound floor(n / (4 log2 m)) - 1."""
    raw = math.floor(n / (4 * math.log2(m))) - 1
    return max(raw, 0), raw


@dataclass(frozen=True)
class BadSubsetResult:
    d: int
    d_raw: int | None
    samples: int
    no_cover: int

    @property
    def frequency(self) -> float:
        return self.no_cover / self.samples if self.samples else float("nan")


def has_bad_subset(sample: Sample, d: int) -> bool:
    n = sample.base.n
    return cover_array(sample.strings, d, (1 << n) - 1, n) is not None


def bad_subset_probability(base: BaseSpec, d: int | None, samples: int, rng: np.random.Generator) -> BadSubsetResult:
    """Fraction of sampled r with no slot subset of size <= d XOR-ing to 1^n."""
    raw = None
    if d is None:
        d, raw = default_d(base.n, base.m)
    if d < 0:
        raise ValueError("d must be non-negative")
    clean = sum(not has_bad_subset(draw_sample(base, rng), d) for _ in range(samples))
    return BadSubsetResult(d, raw, samples, clean)


def monomial_orthogonality(sample: Sample, d: int, cap: int = DIRECT_SUM_CAP) -> tuple[int, list[tuple[int, ...]]]:
    """Direct character sums of every monomial of degree <= d.

    Returns (number checked, subsets with a non-zero sum).  When the sample
    has no bad subset of size <= d the second list must be empty.
    """
    m = sample.base.m
    checked = 0
    nonzero = []
    for size in range(d + 1):
        for T in combinations(range(1, m + 1), size):
            checked += 1
            if character_sum(sample, T, "both", cap) != 0:
                nonzero.append(T)
    return checked, nonzero


def index_frequencies(base: BaseSpec, T: Sequence[int], draws: int, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    """Monte Carlo check of :func:`classify_indices`: per-bit one-frequencies and 1^n hits.

    Only the slots in T are drawn; the others do not affect the XOR.
    """
    n = base.n
    idx = np.asarray(sorted(set(T)), dtype=np.int64) - 1
    raw = rng.integers(0, np.iinfo(np.uint64).max, size=(draws, len(idx)), dtype=np.uint64, endpoint=True)
    vals = (raw & base.free_masks[idx]) | base.fixed_values[idx]
    xor = np.bitwise_xor.reduce(vals, axis=1) if len(idx) else np.zeros(draws, dtype=np.uint64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)
    ones = ((xor[:, None] >> shifts[None, :]) & np.uint64(1)).sum(axis=0).astype(np.int64)
    hits = int((xor == np.uint64((1 << n) - 1)).sum())
    return ones, hits
