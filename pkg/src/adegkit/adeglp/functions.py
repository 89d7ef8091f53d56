"""Partial Boolean functions given by explicit domain points.

A point of {0,1}^N is packed into an int whose most significant bit is input 1,
matching the text form of :class:`adegkit.bitlin.BitString`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

DOMAIN_CAP = 1 << 20


@dataclass(frozen=True)
class PartialBoolFn:
    N: int
    domain: tuple[tuple[int, int], ...]  # (point, value)
    label: str = ""
    input_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("arity must be positive")
        seen = set()
        for point, value in self.domain:
            if not 0 <= point < (1 << self.N):
                raise ValueError(f"point {point} outside {{0,1}}^{self.N}")
            if value not in (0, 1):
                raise ValueError("values must be bits")
            if point in seen:
                raise ValueError(f"duplicate domain point {point:0{self.N}b}")
            seen.add(point)

    def __call__(self, point: int) -> int:
        return dict(self.domain)[point]

    @property
    def is_total(self) -> bool:
        return len(self.domain) == 1 << self.N

    def point_text(self, point: int) -> str:
        return format(point, f"0{self.N}b")


def _check(count: int) -> None:
    if count > DOMAIN_CAP:
        raise ValueError(f"domain of {count} points exceeds the cap {DOMAIN_CAP}")


def parity(v: int) -> int:
    return v.bit_count() & 1


def make_parity(n: int) -> PartialBoolFn:
    _check(1 << n)
    return PartialBoolFn(n, tuple((x, parity(x)) for x in range(1 << n)), f"parity_{n}")


def make_gt_table(n: int) -> PartialBoolFn:
    """GT on 2n inputs: the first n bits are i, the last n are x, value [x <= i]."""
    _check(1 << (2 * n))
    dom = tuple(((i << n) | x, int(x <= i)) for i in range(1 << n) for x in range(1 << n))
    return PartialBoolFn(2 * n, dom, f"gt_{n}")


def make_os(n: int) -> PartialBoolFn:
    """Ordered search on N = 2^n inputs: 0^k 1^(N-k) maps to parity(k), k = 0..N-1."""
    N = 1 << n
    _check(N)
    full = (1 << N) - 1
    dom = tuple(((full >> k), parity(k)) for k in range(N))
    return PartialBoolFn(N, dom, f"os_{N}")


def strings_upto(n: int) -> list[str]:
    """All binary strings of length 0..n, by length then lexicographically."""
    return ["".join(bits) for k in range(n + 1) for bits in product("01", repeat=k)]


def _pack(bits) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | b
    return v


def make_hs(n: int) -> PartialBoolFn:
    """Hidden string: inputs are the substring indicators of every s with |s| <= n."""
    names = strings_upto(n)
    _check(1 << n)
    dom = []
    for x in range(1 << n):
        text = format(x, f"0{n}b")
        dom.append((_pack(int(s in text) for s in names), parity(x)))
    return PartialBoolFn(len(names), tuple(dom), f"hs_{n}", tuple(names))


def ahs_inputs(n: int) -> list[tuple[int, str]]:
    return [(i, s) for i in range(1, n + 1) for s in strings_upto(n - i + 1)]


def make_ahs(n: int) -> PartialBoolFn:
    """Anchored hidden string: inputs are [x_i .. x_{i+|s|-1} = s] for every fitting (i, s)."""
    names = ahs_inputs(n)
    _check(1 << n)
    dom = []
    for x in range(1 << n):
        text = format(x, f"0{n}b")
        dom.append((_pack(int(text[i - 1:i - 1 + len(s)] == s) for i, s in names), parity(x)))
    return PartialBoolFn(len(names), tuple(dom), f"ahs_{n}", tuple(f"{i}:{s}" for i, s in names))


BUILDERS = {"parity": make_parity, "os": make_os, "hs": make_hs, "ahs": make_ahs, "gt": make_gt_table}
