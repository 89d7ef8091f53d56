"""Counter-based random streams.

Every random draw in the package is keyed by ``(master seed, stream id,
index)``. Two derivations exist:

* :func:`generator` builds a :class:`numpy.random.Generator` through
  :class:`numpy.random.SeedSequence`; used for sampling good bases.
* :class:`SplitMix64` is a tiny 64-bit generator whose exact bit stream is
  reproduced by the compiled kernels, so batched Monte Carlo in C and the
  per-trial Python reference give identical results.
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def stream_id(name: str) -> int:
    """Stable 64-bit id for an experiment or stream name."""
    return int.from_bytes(hashlib.sha256(name.encode()).digest()[:8], "little")


def derive_seed(master: int, stream: int, index: int) -> int:
    """Seed for trial ``index`` of ``stream``; independent of worker layout."""
    h = mix64((master & MASK64) ^ mix64((stream + GOLDEN) & MASK64))
    return mix64((h + (index & MASK64) * GOLDEN) & MASK64)


class SplitMix64:
    """SplitMix64 with the subset of the :mod:`random` API the algorithms use."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def getrandbits(self, k: int) -> int:
        if k < 0:
            raise ValueError("number of bits must be non-negative")
        if k == 0:
            return 0
        if k <= 64:
            return self.next64() >> (64 - k)
        out = 0
        got = 0
        while got < k:
            take = min(64, k - got)
            out = (out << take) | (self.next64() >> (64 - take))
            got += take
        return out

    def randrange(self, m: int) -> int:
        if m <= 0:
            raise ValueError("empty range for randrange()")
        if m == 1:
            return 0
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            r = self.next64()
            if r < limit:
                return r % m

    def random(self) -> float:
        return (self.next64() >> 11) * (1.0 / (1 << 53))


def trial_rng(master: int, stream: str | int, index: int) -> SplitMix64:
    sid = stream_id(stream) if isinstance(stream, str) else stream
    return SplitMix64(derive_seed(master, sid, index))


def generator(master: int, stream: str, index: int = 0) -> np.random.Generator:
    """numpy Generator for ``(master, stream, index)``."""
    sid = stream_id(stream)
    words = [master & MASK64, sid, index & MASK64]
    return np.random.default_rng(np.random.SeedSequence(words))
