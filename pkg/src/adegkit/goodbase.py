"""Good bases: products of basis singletons and template-supported random strings.

A base has ``n`` fixed basis slots followed by ``t`` copies of a template
package.  Each copy records, per template, the slot positions that carry it in
left-to-right order so protocols can consume fresh strings deterministically.
Slot positions are 1-based throughout the public API.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bitlin import BitString

MAX_BITS = 64


def seg_mask(n: int, lo: int, hi: int) -> int:
    """Template with ones exactly on positions lo+1..hi."""
    if not 0 <= lo <= hi <= n:
        raise ValueError(f"bad segment ({lo}, {hi}] for n={n}")
    return ((1 << (hi - lo)) - 1) << (n - hi)


def prefix_mask(n: int, a: int) -> int:
    return seg_mask(n, 0, a)


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def log2_exact(n: int) -> int:
    if not is_power_of_two(n):
        raise ValueError(f"n={n} is not a power of two")
    return n.bit_length() - 1


@dataclass(frozen=True)
class Slot:
    kind: str  # "fixed" or "free"
    value: int  # fixed string, or template for free slots

    def __post_init__(self) -> None:
        if self.kind not in ("fixed", "free"):
            raise ValueError(f"unknown slot kind {self.kind!r}")


@dataclass(frozen=True)
class HalvingNode:
    """Internal node (lo, hi] of the halving tree; tests the first half (lo, mid]."""

    lo: int
    mid: int
    hi: int
    eq_next: int  # node id, or -bit when the walk ends comparing that bit
    ne_next: int


def halving_tree(n: int) -> list[HalvingNode]:
    """Binary search tree over bit positions (0, n] in breadth-first order.

    A node (lo, hi] with width >= 2 splits at ``mid = lo + (hi - lo) // 2``.
    Equal first halves send the walk to (mid, hi], unequal ones to (lo, mid];
    width-1 children end the walk on their single bit.  For powers of two the
    tested segments are exactly the dyadic first halves.
    """
    if n < 1:
        raise ValueError("n must be positive")
    order: list[tuple[int, int]] = []
    queue = [(0, n)] if n >= 2 else []
    while queue:
        lo, hi = queue.pop(0)
        order.append((lo, hi))
        mid = lo + (hi - lo) // 2
        for child in ((lo, mid), (mid, hi)):
            if child[1] - child[0] >= 2:
                queue.append(child)
    ids = {iv: k for k, iv in enumerate(order)}

    def code(lo: int, hi: int) -> int:
        return ids[(lo, hi)] if hi - lo >= 2 else -hi

    nodes = []
    for lo, hi in order:
        mid = lo + (hi - lo) // 2
        nodes.append(HalvingNode(lo, mid, hi, code(mid, hi), code(lo, mid)))
    return nodes


def dyadic_intervals(n: int) -> list[tuple[int, int]]:
    """Intervals (a, b] of width >= 2 of the dyadic tree over (0, n], breadth first."""
    log2_exact(n)
    out = []
    width = n
    while width >= 2:
        out.extend((a, a + width) for a in range(0, n, width))
        width //= 2
    return out


@dataclass(frozen=True, eq=False)
class BaseSpec:
    n: int
    slots: tuple[Slot, ...]
    copies: tuple[Mapping[int, tuple[int, ...]], ...]
    name: str = "generic"
    params: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_BITS:
            raise ValueError(f"n must be in 1..{MAX_BITS}")
        full = (1 << self.n) - 1
        for s in self.slots:
            if not 0 <= s.value <= full:
                raise ValueError("slot value wider than n bits")
        seen: set[int] = set()
        multisets = []
        for layout in self.copies:
            ms = Counter()
            for tau, positions in layout.items():
                for p in positions:
                    if not 1 <= p <= self.m:
                        raise ValueError(f"copy slot {p} out of range")
                    slot = self.slots[p - 1]
                    if slot.kind != "free" or slot.value != tau:
                        raise ValueError(f"slot {p} does not carry template {tau}")
                    if p in seen:
                        raise ValueError(f"slot {p} listed in two copies")
                    seen.add(p)
                ms[tau] += len(positions)
            multisets.append(ms)
        if self.copies:
            free = {k + 1 for k, s in enumerate(self.slots) if s.kind == "free"}
            if seen != free:
                raise ValueError("copies do not partition the free slots")
            if any(ms != multisets[0] for ms in multisets[1:]):
                raise ValueError("copies carry different template multisets")
        fixed = np.array([s.value if s.kind == "fixed" else 0 for s in self.slots], dtype=np.uint64)
        masks = np.array([s.value if s.kind == "free" else 0 for s in self.slots], dtype=np.uint64)
        fixed.flags.writeable = False
        masks.flags.writeable = False
        object.__setattr__(self, "_fixed", fixed)
        object.__setattr__(self, "_masks", masks)

    @property
    def m(self) -> int:
        return len(self.slots)

    @property
    def t(self) -> int:
        return len(self.copies)

    @property
    def fixed_values(self) -> np.ndarray:
        return self._fixed  # type: ignore[attr-defined]

    @property
    def free_masks(self) -> np.ndarray:
        return self._masks  # type: ignore[attr-defined]

    def template_slots(self, j: int, tau: int) -> tuple[int, ...]:
        """Slot positions of template ``tau`` inside copy ``j`` (1-based), in order."""
        if not 1 <= j <= self.t:
            raise IndexError(f"copy {j} outside 1..{self.t}")
        return self.copies[j - 1].get(tau, ())

    def to_dict(self) -> dict:
        n = self.n
        return {
            "name": self.name,
            "params": dict(self.params),
            "n": n,
            "m": self.m,
            "slots": [
                {"kind": s.kind, ("value" if s.kind == "fixed" else "tau"): format(s.value, f"0{n}b")}
                for s in self.slots
            ],
            "copies": {
                "t": self.t,
                "layout": [
                    {format(tau, f"0{n}b"): list(pos) for tau, pos in layout.items()}
                    for layout in self.copies
                ],
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @property
    def hash(self) -> str:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hashlib.sha256(self.to_json().encode()).hexdigest()[:16]
            object.__setattr__(self, "_hash", cached)
        return cached

    @classmethod
    def from_dict(cls, data: Mapping) -> "BaseSpec":
        slots = tuple(
            Slot(s["kind"], int(s["value"] if s["kind"] == "fixed" else s["tau"], 2)) for s in data["slots"]
        )
        copies = tuple(
            {int(tau, 2): tuple(pos) for tau, pos in layout.items()} for layout in data["copies"]["layout"]
        )
        return cls(int(data["n"]), slots, copies, data.get("name", "generic"), dict(data.get("params", {})))


def assemble(n: int, package: Sequence[int], t: int, name: str = "generic",
             params: Mapping[str, int] | None = None,
             fixed: Sequence[int] | None = None) -> BaseSpec:
    """Base = fixed slots (the standard basis by default) then ``t`` copies of ``package``."""
    if fixed is None:
        fixed = [1 << (n - j) for j in range(1, n + 1)]
    slots = [Slot("fixed", v) for v in fixed]
    copies = []
    for _ in range(t):
        layout: dict[int, list[int]] = {}
        for tau in package:
            slots.append(Slot("free", tau))
            layout.setdefault(tau, []).append(len(slots))
        copies.append({tau: tuple(pos) for tau, pos in layout.items()})
    return BaseSpec(n, tuple(slots), tuple(copies), name, dict(params or {}))


def default_alpha_os(n: int) -> int:
    lg = math.log2(n)
    return max(1, math.ceil(2 * math.log2(lg))) if lg > 1 else 1


def default_t(n: int, factor: int) -> int:
    return math.ceil(factor * n * math.log(2))


def os_templates(n: int) -> list[int]:
    return [seg_mask(n, node.lo, node.mid) for node in halving_tree(n)]


def build_os_base(n: int, alpha: int | None = None, t: int | None = None) -> BaseSpec:
    """R_OS: basis slots, then t copies of alpha stacked halving-tree template sets.

    Each stack holds n - 1 templates, so m = n + alpha * t * (n - 1).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    alpha = default_alpha_os(n) if alpha is None else alpha
    t = default_t(n, 250) if t is None else t
    if alpha < 1 or t < 1:
        raise ValueError("alpha and t must be positive")
    package = os_templates(n) * alpha
    return assemble(n, package, t, "os", {"alpha": alpha, "t": t})


def ospp_templates(n: int, c: int) -> list[int]:
    """One R-hat for the noisy-search variant: interval questions then unit-interval pairs."""
    log_n = log2_exact(n)
    qs: list[int] = []
    for a, b in dyadic_intervals(n):
        for q in (a, b, (a + b) // 2):
            if 0 < q < n:
                qs.append(prefix_mask(n, q))
    unit: list[int] = []
    for a in range(n):
        for q in (a, a + 1):
            if 0 < q < n:
                unit.append(prefix_mask(n, q))
    return qs + unit * (2 * c * log_n)


def build_ospp_base(n: int, alpha: int = 2, t: int | None = None, c: int = 1) -> BaseSpec:
    if n < 2:
        raise ValueError("n must be at least 2")
    log_n = log2_exact(n)
    t = default_t(n, 250) if t is None else t
    if alpha < 1 or t < 1 or c < 1:
        raise ValueError("alpha, t and c must be positive")
    package = ospp_templates(n, c) * (alpha * c * log_n)
    return assemble(n, package, t, "ospp", {"alpha": alpha, "t": t, "c": c})


def ahs_templates(n: int) -> list[int]:
    """All contiguous windows, widest first, left to right within a width."""
    return [seg_mask(n, p, p + w) for w in range(n, 0, -1) for p in range(0, n - w + 1)]


def build_ahs_base(n: int, alpha: int = 4, t: int | None = None) -> BaseSpec:
    if n < 2:
        raise ValueError("n must be at least 2")
    t = default_t(n, 1000) if t is None else t
    if alpha < 1 or t < 1:
        raise ValueError("alpha and t must be positive")
    return assemble(n, ahs_templates(n) * alpha, t, "ahs", {"alpha": alpha, "t": t})


@dataclass(frozen=True, eq=False)
class Sample:
    base: BaseSpec
    strings: np.ndarray  # uint64, one entry per slot

    def __post_init__(self) -> None:
        s = np.asarray(self.strings, dtype=np.uint64)
        if s.shape != (self.base.m,):
            raise ValueError("sample size does not match base")
        if np.any((s & ~self.base.free_masks) != self.base.fixed_values):
            raise ValueError("sample violates fixed values or template supports")
        s = s.copy()
        s.flags.writeable = False
        object.__setattr__(self, "strings", s)

    def string(self, j: int) -> BitString:
        return BitString(self.base.n, int(self.strings[j - 1]))

    def bitstrings(self) -> list[BitString]:
        n = self.base.n
        return [BitString(n, int(v)) for v in self.strings]

    def to_dict(self) -> dict:
        n = self.base.n
        return {"base_hash": self.base.hash, "strings": [format(int(v), f"0{n}b") for v in self.strings]}


def sample(base: BaseSpec, rng: np.random.Generator) -> Sample:
    """Fixed slots copied; free slots get independent fair bits on their template support."""
    raw = rng.integers(0, np.iinfo(np.uint64).max, size=base.m, dtype=np.uint64, endpoint=True)
    return Sample(base, (raw & base.free_masks) | base.fixed_values)


def copy_strings(s: Sample, templates: Iterable[int], j: int) -> np.ndarray:
    """Strings of copy ``j`` for each template in order, shape (len(templates), per-template count)."""
    rows = [s.strings[np.asarray(s.base.template_slots(j, tau), dtype=np.int64) - 1] for tau in templates]
    return np.array(rows, dtype=np.uint64)
