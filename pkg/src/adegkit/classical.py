"""Classical query algorithms for ordered search and hidden-substring reconstruction.

The sorted oracle answers "is x <= i?" for an n-bit threshold x; the substring
oracle answers "does s occur in x?".  Both count their queries.  The
truncated variants stop after ``t`` steps and guess the rest, trading queries
for a small but positive advantage over a coin flip.
"""

from __future__ import annotations

from typing import Protocol

from .bitlin import BitString


class RandomBits(Protocol):
    def getrandbits(self, k: int) -> int: ...
    def randrange(self, m: int) -> int: ...


def _as_text(s: str | BitString) -> str:
    text = str(s) if isinstance(s, BitString) else s
    if set(text) - {"0", "1"}:
        raise ValueError(f"not a bit string: {text!r}")
    return text


def chi(s: str | BitString, x: BitString) -> int:
    """1 iff ``s`` occurs somewhere in ``x``; the empty string always occurs."""
    return int(_as_text(s) in str(x))


def phi(i: int, s: str | BitString, x: BitString) -> int:
    """1 iff ``s`` occurs in ``x`` starting at position ``i`` (1-based)."""
    text = _as_text(s)
    n = x.length
    if not 1 <= i <= n:
        raise ValueError(f"position {i} outside 1..{n}")
    if len(text) > n - i + 1:
        raise ValueError("substring runs past the end of x")
    return int(str(x)[i - 1:i - 1 + len(text)] == text)


class SortedOracle:
    """Bit ``i`` of the sorted list a_0 <= ... <= a_{2^n - 1}, i.e. [x <= i]."""

    def __init__(self, x: BitString) -> None:
        self.x = x
        self.counter = 0

    @property
    def n(self) -> int:
        return self.x.length

    def query(self, i: int | BitString) -> int:
        v = i.value if isinstance(i, BitString) else int(i)
        if not 0 <= v < (1 << self.n):
            raise ValueError(f"index {v} out of range")
        self.counter += 1
        return int(self.x.value <= v)


class SubstringOracle:
    def __init__(self, x: BitString) -> None:
        self.x = x
        self._text = str(x)
        self.counter = 0

    @property
    def n(self) -> int:
        return self.x.length

    def query(self, s: str | BitString) -> int:
        text = _as_text(s)
        if len(text) > self.n:
            raise ValueError("query longer than the hidden string")
        self.counter += 1
        return int(text in self._text)


def _search_prefix(oracle: SortedOracle, steps: int) -> int:
    """First ``steps`` bits of x by binary search, one query per bit."""
    n = oracle.n
    prefix = 0
    for k in range(steps):
        rest = n - k - 1
        # largest number starting prefix.0
        probe = (prefix << (rest + 1)) | ((1 << rest) - 1)
        prefix = (prefix << 1) | (0 if oracle.query(probe) else 1)
    return prefix


def os_binary_search(oracle: SortedOracle) -> BitString:
    return BitString(oracle.n, _search_prefix(oracle, oracle.n))


def os_recon_unbounded(oracle: SortedOracle, t: int, rng: RandomBits) -> BitString:
    """t binary-search steps, then uniformly random remaining bits."""
    n = oracle.n
    if not 0 <= t <= n:
        raise ValueError(f"t must lie in 0..{n}")
    prefix = _search_prefix(oracle, t)
    return BitString(n, (prefix << (n - t)) | rng.getrandbits(n - t))


def os_decision_unbounded(oracle: SortedOracle, t: int, rng: RandomBits) -> int:
    """Guess x', verify x' = x with two threshold queries, else answer a coin flip.

    x = x' iff x <= x' and not x <= x' - 1; the second check is skipped when x' = 0.
    """
    guess = os_recon_unbounded(oracle, t, rng)
    upper = oracle.query(guess.value)
    lower = oracle.query(guess.value - 1) if guess.value > 0 else 0
    if upper and not lower:
        return guess.parity()
    return rng.getrandbits(1)


def _extend(oracle: SubstringOracle, s: str, order: str, right: bool, limit: int) -> str:
    n = oracle.n
    while len(s) < min(n, limit):
        for b in order:
            cand = s + b if right else b + s
            if oracle.query(cand):
                s = cand
                break
        else:
            break
    return s


def _grow(oracle: SubstringOracle, limit: int, one_first: bool) -> str:
    order = "10" if one_first else "01"
    s = _extend(oracle, "", order, True, limit)
    return _extend(oracle, s, order, False, limit)


def hs_reconstruct(oracle: SubstringOracle, one_first: bool = True) -> BitString:
    """Grow a known substring to the right until stuck, then to the left.

    A string that cannot be extended to the right is a suffix of x, so the
    left phase always reaches length n.  At most 2n + 2 queries.
    """
    return BitString.parse(_grow(oracle, oracle.n, one_first))


def _place(n: int, s: str, rng: RandomBits) -> BitString:
    """Embed ``s`` at a uniformly random offset, filling the rest with random bits."""
    free = n - len(s)
    fill = rng.getrandbits(free)
    p = rng.randrange(free + 1)
    right = free - p
    left_bits = fill >> right
    right_bits = fill & ((1 << right) - 1)
    core = int(s, 2) if s else 0
    return BitString(n, (left_bits << (n - p)) | (core << right) | right_bits)


def hs_recon_unbounded(oracle: SubstringOracle, t: int, rng: RandomBits, one_first: bool = True) -> BitString:
    """Identify ``t`` bits of some substring (at most 2t + 2 queries), then guess its placement."""
    if t < 0:
        raise ValueError("t must be non-negative")
    s = _grow(oracle, min(t, oracle.n), one_first)
    return _place(oracle.n, s, rng)


def hs_decision_unbounded(oracle: SubstringOracle, t: int, rng: RandomBits, one_first: bool = True) -> int:
    """Reconstruct a guess, confirm it with one full-length query, else flip a coin."""
    guess = hs_recon_unbounded(oracle, t, rng, one_first)
    if oracle.query(str(guess)):
        return guess.parity()
    return rng.getrandbits(1)


ALGORITHMS = {"os-recon": 0, "os-decision": 1, "hs-recon": 2, "hs-decision": 3}
