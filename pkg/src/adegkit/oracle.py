"""The helper oracle Y(r, x): one inner product per base slot, with a query meter."""

from __future__ import annotations

import numpy as np

from .bitlin import BitString
from .goodbase import Sample


def oracle_bits(strings: np.ndarray, x: int) -> np.ndarray:
    """<r_j, x> mod 2 for every packed string r_j."""
    return (np.bitwise_count(strings & np.uint64(x)) & 1).astype(np.uint8)


class OracleTable:
    """Eagerly evaluated oracle; ``query`` is 1-based and counts every access."""

    def __init__(self, sample: Sample, x: BitString) -> None:
        if x.length != sample.base.n:
            raise ValueError(f"x has {x.length} bits, base expects {sample.base.n}")
        self.sample = sample
        self.x = x
        self.bits = oracle_bits(sample.strings, x.value)
        self.bits.flags.writeable = False
        self.counter = 0

    @property
    def m(self) -> int:
        return len(self.bits)

    def query(self, j: int) -> int:
        if not 1 <= j <= self.m:
            raise IndexError(f"oracle index {j} outside 1..{self.m}")
        self.counter += 1
        return int(self.bits[j - 1])

    def reset_counter(self) -> None:
        self.counter = 0

    def read_counter(self) -> int:
        return self.counter


def query(table: OracleTable, j: int) -> int:
    return table.query(j)


def reset_counter(table: OracleTable) -> None:
    table.reset_counter()


def read_counter(table: OracleTable) -> int:
    return table.read_counter()
