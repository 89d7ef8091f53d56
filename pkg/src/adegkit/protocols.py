"""Per-copy query algorithms over the helper oracle and their acceptance probabilities.

Each algorithm reads only the basis slots and one prepackaged copy ``j`` of
random strings.  Inner products of the comparand with base strings are free;
only reads of the oracle table are counted.

* ``gt_b``: halving search for the most significant differing bit on an R_OS base.
* ``gt_b_pp``: the same comparison driven by noisy search on an R_OS++ base.
* ``ahs_b``: anchored substring equality on an R_AHS base.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .bitlin import BitString
from .goodbase import Sample, halving_tree, prefix_mask, seg_mask
from .noisy import BudgetExhausted, noisy_search
from .oracle import OracleTable


class StructuralError(RuntimeError):
    """The base lacks the template occurrences an algorithm needs."""


def gt(i: BitString, x: BitString) -> int:
    """GT_i(x) = [x <= i] with both read as binary numbers."""
    return int(x.value <= i.value)


def _ip(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


def _slots(sample: Sample, j: int, tau: int, need: int, start: int = 0) -> tuple[int, ...]:
    slots = sample.base.template_slots(j, tau)
    if len(slots) < start + need:
        raise StructuralError(
            f"copy {j} has {len(slots)} strings for template {tau:0{sample.base.n}b}, need {start + need}")
    return slots[start:start + need]


def _equal(table: OracleTable, sample: Sample, comparand: int, slots: Iterable[int]) -> bool:
    """One-sided equality fingerprint: every listed slot agrees with the comparand."""
    same = True
    for v in slots:
        bit = table.query(v)
        same &= bit == _ip(comparand, int(sample.strings[v - 1]))
    return same


def gt_alpha(sample: Sample) -> int:
    return int(sample.base.params["alpha"])


def gt_b_budget(n: int, alpha: int) -> int:
    # equality tests along one root-to-leaf path plus the final bit read
    return alpha * (n - 1).bit_length() + 1


def gt_b(table: OracleTable, sample: Sample, i: BitString, j: int) -> int:
    n = sample.base.n
    alpha = gt_alpha(sample)
    nodes = halving_tree(n)
    code = 0 if nodes else -1
    while code >= 0:
        node = nodes[code]
        tau = seg_mask(n, node.lo, node.mid)
        same = _equal(table, sample, i.value, _slots(sample, j, tau, alpha))
        code = node.eq_next if same else node.ne_next
    k = -code
    return int(table.query(k) <= i[k])


def gt_pp_budget(n: int, alpha: int, c: int) -> int:
    return 3 * alpha * c * (n.bit_length() - 1) + 1


def gt_b_pp(table: OracleTable, sample: Sample, i: BitString, j: int, repeats: int | None = None,
            exact: bool = False) -> int:
    """Compare at the key found by noisy search over "first a bits equal?" fingerprints.

    ``exact=True`` swaps the fingerprints for a true prefix comparison (no
    queries), isolating the search logic from fingerprint collisions.
    """
    base = sample.base
    n = base.n
    alpha = int(base.params["alpha"])
    c = int(base.params["c"])
    used: dict[int, int] = {}

    def key_above(a: int) -> bool:
        tau = prefix_mask(n, a)
        if exact:
            return (i.value ^ table.x.value) & tau == 0
        start = used.get(tau, 0)
        slots = _slots(sample, j, tau, alpha, start)
        used[tau] = start + alpha
        return _equal(table, sample, i.value, slots)

    try:
        k = noisy_search(key_above, n, c, repeats).location
    except BudgetExhausted as exc:
        raise StructuralError(str(exc)) from exc
    return int(table.query(k) <= i[k])


def ahs_b(table: OracleTable, sample: Sample, i: int, s: str | BitString, j: int) -> int:
    """Claimed [x_i .. x_{i+|s|-1} = s] from alpha fingerprints of that window."""
    n = sample.base.n
    text = str(s) if isinstance(s, BitString) else s
    if not 1 <= i <= n or len(text) > n - i + 1:
        raise ValueError(f"substring of length {len(text)} at {i} does not fit in {n} bits")
    if not text:
        return 1
    alpha = int(sample.base.params["alpha"])
    lo, hi = i - 1, i - 1 + len(text)
    placed = int(text, 2) << (n - hi)
    return int(_equal(table, sample, placed, _slots(sample, j, seg_mask(n, lo, hi), alpha)))


def run_copy(table: OracleTable, sample: Sample, comparand, j: int) -> int:
    """Dispatch to the per-copy algorithm matching the base construction."""
    kind = sample.base.name
    if kind == "os":
        return gt_b(table, sample, comparand, j)
    if kind == "ospp":
        return gt_b_pp(table, sample, comparand, j)
    if kind == "ahs":
        pos, s = comparand
        return ahs_b(table, sample, pos, s, j)
    raise ValueError(f"no algorithm for base kind {kind!r}")


def amplifier_a(table: OracleTable, sample: Sample, comparand, rng) -> int:
    """Run the per-copy algorithm on a uniformly random copy."""
    t = sample.base.t
    j = 1 + (rng.randrange(t) if hasattr(rng, "randrange") else int(rng.integers(t)))
    return run_copy(table, sample, comparand, j)


def acceptance_probability(sample: Sample, comparand, x: BitString) -> Fraction:
    """Exact acceptance probability of the amplifier: mean over all copies."""
    table = OracleTable(sample, x)
    t = sample.base.t
    return Fraction(sum(run_copy(table, sample, comparand, j) for j in range(1, t + 1)), t)


def truth(kind: str, comparand, x: BitString) -> int:
    if kind in ("os", "ospp"):
        return gt(comparand, x)
    pos, s = comparand
    text = str(s)
    return int(str(x)[pos - 1:pos - 1 + len(text)] == text)


# ---------------------------------------------------------------- fast path for R_OS

def os_copy_strings(sample: Sample) -> np.ndarray:
    """Strings of every copy arranged (t, node, alpha) in halving-tree order."""
    base = sample.base
    n = base.n
    alpha = gt_alpha(sample)
    taus = [seg_mask(n, nd.lo, nd.mid) for nd in halving_tree(n)]
    idx = np.array([[base.template_slots(j, tau)[:alpha] for tau in taus] for j in range(1, base.t + 1)],
                   dtype=np.int64).reshape(base.t, len(taus), alpha)
    return sample.strings[idx - 1]


def os_accept_counts(sample: Sample) -> np.ndarray:
    """Number of copies accepting, for every (i, x); shape (2^n, 2^n) indexed [i, x]."""
    n = sample.base.n
    nodes = halving_tree(n)
    eq = np.array([nd.eq_next for nd in nodes], dtype=np.int64)
    ne = np.array([nd.ne_next for nd in nodes], dtype=np.int64)
    final = kernels.os_final_bits(os_copy_strings(sample), eq, ne, n)  # (t, 2^n) over z = i ^ x
    Z = 1 << n
    hist = np.zeros((Z, n + 1), dtype=np.int64)
    np.add.at(hist, (np.broadcast_to(np.arange(Z), final.shape), final.astype(np.int64)), 1)
    vals = np.arange(Z, dtype=np.int64)
    counts = np.zeros((Z, Z), dtype=np.int64)
    z = vals[:, None] ^ vals[None, :]
    for k in range(1, n + 1):
        bit = (vals >> (n - k)) & 1
        le = bit[None, :] <= bit[:, None]  # x_k <= i_k
        counts += np.where(le, hist[z, k], 0)
    return counts


@dataclass
class ErrorRow:
    comparand: str
    x: str
    mean_w: Fraction
    max_dev: Fraction
    per_copy: list[int] | None = None


@dataclass
class ErrorMatrix:
    variant: str
    n: int
    params: dict
    rows: list[ErrorRow] = field(default_factory=list)

    @property
    def max_deviation(self) -> Fraction:
        return max((r.max_dev for r in self.rows), default=Fraction(0))

    def to_csv(self, r_seed: int | str = "") -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["variant", "n", "alpha", "t", "c", "r_seed", "i", "x_or_s", "mean_W", "max_dev"])
        p = self.params
        for r in self.rows:
            w.writerow([self.variant, self.n, p.get("alpha", ""), p.get("t", ""), p.get("c", ""), r_seed,
                        r.comparand, r.x, f"{float(r.mean_w):.10g}", f"{float(r.max_dev):.10g}"])
        return out.getvalue()


def _fmt_comparand(kind: str, comparand) -> str:
    if kind in ("os", "ospp"):
        return str(comparand)
    pos, s = comparand
    return f"{pos}:{s}"


def error_matrix(sample: Sample, cells: Sequence[tuple] | None = None, per_copy: bool = False) -> ErrorMatrix:
    """W(i, x, r, j) averaged over copies, for every listed (comparand, x) cell.

    ``cells`` defaults to all (i, x) pairs for the comparison bases; substring
    bases need an explicit plan.  R_OS bases use a vectorized path unless
    per-copy indicators are requested.
    """
    base = sample.base
    kind = base.name
    n = base.n
    t = base.t
    matrix = ErrorMatrix(kind, n, dict(base.params))
    if cells is None:
        if kind not in ("os", "ospp"):
            raise ValueError("substring bases need an explicit list of cells")
        if kind == "os" and not per_copy:
            counts = os_accept_counts(sample)
            Z = 1 << n
            for iv in range(Z):
                for xv in range(Z):
                    acc = Fraction(int(counts[iv, xv]), t)
                    dev = 1 - acc if xv <= iv else acc
                    matrix.rows.append(ErrorRow(format(iv, f"0{n}b"), format(xv, f"0{n}b"), dev, dev))
            return matrix
        cells = [(BitString(n, iv), BitString(n, xv)) for iv in range(1 << n) for xv in range(1 << n)]
    for comparand, x in cells:
        table = OracleTable(sample, x)
        want = truth(kind, comparand, x)
        w = [int(run_copy(table, sample, comparand, j) != want) for j in range(1, t + 1)]
        mean = Fraction(sum(w), t)
        matrix.rows.append(ErrorRow(_fmt_comparand(kind, comparand), str(x), mean, mean, w if per_copy else None))
    return matrix
