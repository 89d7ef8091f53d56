"""Bit strings over GF(2) and subset-XOR search.

Bits are numbered 1..n from the most significant end, so the text form
``"0110"`` reads bit 1 first and integer order equals binary-number order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels


@dataclass(frozen=True, order=True)
class BitString:
    length: int
    value: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("BitString length must be positive")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def parse(cls, text: str) -> "BitString":
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls(n, (1 << n) - 1)

    @classmethod
    def unit(cls, n: int, j: int) -> "BitString":
        """The basis string with a single one at position ``j`` (1-based)."""
        if not 1 <= j <= n:
            raise IndexError(f"position {j} outside 1..{n}")
        return cls(n, 1 << (n - j))

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b")

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, j: int) -> int:
        if not 1 <= j <= self.length:
            raise IndexError(f"bit {j} outside 1..{self.length}")
        return (self.value >> (self.length - j)) & 1

    def _check(self, other: "BitString") -> None:
        if not isinstance(other, BitString):
            raise TypeError(f"expected BitString, got {type(other).__name__}")
        if other.length != self.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: "BitString") -> "BitString":
        self._check(other)
        return BitString(self.length, self.value ^ other.value)

    def __and__(self, other: "BitString") -> "BitString":
        self._check(other)
        return BitString(self.length, self.value & other.value)

    def __or__(self, other: "BitString") -> "BitString":
        self._check(other)
        return BitString(self.length, self.value | other.value)

    def __invert__(self) -> "BitString":
        return BitString(self.length, self.value ^ ((1 << self.length) - 1))

    def weight(self) -> int:
        return self.value.bit_count()

    def parity(self) -> int:
        return self.value.bit_count() & 1


def inner_product(a: BitString, b: BitString) -> int:
    """<a, b> mod 2."""
    return (a & b).parity()


def _check_same_length(strings: Sequence[BitString]) -> int | None:
    lengths = {s.length for s in strings}
    if len(lengths) > 1:
        raise ValueError(f"strings have mixed lengths {sorted(lengths)}")
    return lengths.pop() if lengths else None


def xor_subset(strings: Sequence[BitString], T: Iterable[int], n: int | None = None) -> BitString:
    """XOR of ``strings[i]`` over the 1-based indices in ``T``; empty T gives 0^n."""
    length = _check_same_length(strings)
    if length is None:
        length = n
    if length is None:
        raise ValueError("cannot infer length of an empty XOR; pass n")
    acc = 0
    for i in T:
        if not 1 <= i <= len(strings):
            raise IndexError(f"index {i} outside 1..{len(strings)}")
        acc ^= strings[i - 1].value
    return BitString(length, acc)


def rank_gf2(strings: Sequence[BitString]) -> int:
    _check_same_length(strings)
    return kernels.gf2_rank([s.value for s in strings])


def in_span(strings: Sequence[BitString], target: BitString) -> bool:
    return rank_gf2(list(strings) + [target]) == rank_gf2(strings)


def exists_small_xor_cover(strings: Sequence[BitString], d: int, target: BitString) -> frozenset[int] | None:
    """Some 1-based index set T, |T| <= d, whose XOR equals ``target``; None if none exists.

    Duplicate strings are distinct elements.  A span check runs first, so
    targets outside the GF(2) span return immediately.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    _check_same_length(list(strings) + [target])
    values = [s.value for s in strings]
    return _cover_values(values, d, target.value, target.length)


def _cover_values(values, d: int, target: int, n: int) -> frozenset[int] | None:
    if target == 0:
        return frozenset()
    if kernels.gf2_rank(list(values) + [target]) > kernels.gf2_rank(values):
        return None
    if n <= 64:
        arr = np.asarray(values, dtype=np.uint64)
        found = kernels.xor_cover(arr, d, target)
    else:
        found = kernels.python.xor_cover(values, d, target)
    if found is None:
        return None
    return frozenset(i + 1 for i in found)


def cover_array(values: np.ndarray, d: int, target: int, n: int) -> frozenset[int] | None:
    """:func:`exists_small_xor_cover` on a packed uint64 array (used by sampling loops)."""
    return _cover_values([int(v) for v in values], d, target, n)
