"""Pure-Python kernels; same signatures and results as the compiled ``_kernels``."""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

BACKEND = "python"

# below this many candidate subsets, enumerate directly instead of meet-in-the-middle
_PLAIN_LIMIT = 4096


def gf2_rank(vals) -> int:
    basis: list[int] = []
    for v in vals:
        v = int(v)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def _xor_of(vals, idx) -> int:
    acc = 0
    for k in idx:
        acc ^= vals[k]
    return acc


def xor_cover(vals, d: int, target: int):
    """Some index tuple T (0-based, sorted) with |T| <= d and XOR = target, else None."""
    vals = [int(v) for v in vals]
    target = int(target)
    m = len(vals)
    if target == 0:
        return ()
    d = min(d, m)
    if d <= 0:
        return None
    if sum(comb(m, k) for k in range(d + 1)) <= _PLAIN_LIMIT:
        for size in range(1, d + 1):
            for idx in combinations(range(m), size):
                if _xor_of(vals, idx) == target:
                    return idx
        return None
    h1 = (d + 1) // 2
    h2 = d // 2
    table: dict[int, tuple[int, ...]] = {}
    for size in range(h1 + 1):
        for idx in combinations(range(m), size):
            table.setdefault(_xor_of(vals, idx), idx)
    for size in range(h2 + 1):
        for idx in combinations(range(m), size):
            hit = table.get(_xor_of(vals, idx) ^ target)
            if hit is not None:
                # A xor B = target and |A ^ B| <= |A| + |B| <= d
                return tuple(sorted(set(hit) ^ set(idx)))
    return None


def char_sum(v: int, n: int) -> int:
    z = np.arange(1 << n, dtype=np.uint64)
    par = np.bitwise_count(z & np.uint64(v)) & 1
    return int((1 << n) - 2 * int(par.sum()))


def os_final_bits(strings: np.ndarray, eq_next: np.ndarray, ne_next: np.ndarray, n: int) -> np.ndarray:
    """Final compared bit of the halving walk for every copy and every z = i ^ x.

    ``strings`` has shape (t, K, alpha); node ``k`` passes its equality test for
    z iff every one of its alpha strings has even overlap with z.  Successor
    codes >= 0 are node ids, negative codes ``-b`` mean "compare bit b".
    """
    t = strings.shape[0]
    K = strings.shape[1]
    Z = 1 << n
    if K == 0:
        return np.ones((t, Z), dtype=np.int16)
    z = np.arange(Z, dtype=np.uint64)
    out = np.empty((t, Z), dtype=np.int16)
    cols = np.arange(Z)
    chunk = max(1, (1 << 22) // max(1, K * strings.shape[2] * Z))
    for j0 in range(0, t, chunk):
        block = strings[j0:j0 + chunk]
        par = np.bitwise_count(block[:, :, :, None] & z[None, None, None, :]) & 1
        eqtab = ~par.astype(bool).any(axis=2)  # (tb, K, Z)
        tb = block.shape[0]
        rows = np.arange(tb)[:, None]
        cur = np.zeros((tb, Z), dtype=np.int64)
        res = np.zeros((tb, Z), dtype=np.int16)
        active = np.ones((tb, Z), dtype=bool)
        while active.any():
            e = eqtab[rows, cur, cols[None, :]]
            nxt = np.where(e, eq_next[cur], ne_next[cur])
            fin = active & (nxt < 0)
            res[fin] = -nxt[fin]
            active &= ~fin
            cur = np.where(active, nxt, 0)
        out[j0:j0 + tb] = res
    return out


def classical_mc(algo: int, n: int, t: int, trials: int, master: int, stream: int,
                 one_first: bool = True) -> tuple[int, int]:
    """(successes, max queries) over ``trials`` seeded trials of a classical algorithm."""
    from . import classical
    from .bitlin import BitString
    from .rng import SplitMix64, derive_seed

    successes = 0
    max_q = 0
    for k in range(trials):
        rng = SplitMix64(derive_seed(master, stream, k))
        x = BitString(n, rng.getrandbits(n))
        if algo in (0, 1):
            oracle = classical.SortedOracle(x)
        else:
            oracle = classical.SubstringOracle(x)
        if algo == 0:
            ok = classical.os_recon_unbounded(oracle, t, rng) == x
        elif algo == 1:
            ok = classical.os_decision_unbounded(oracle, t, rng) == x.parity()
        elif algo == 2:
            ok = classical.hs_recon_unbounded(oracle, t, rng, one_first=one_first) == x
        elif algo == 3:
            ok = classical.hs_decision_unbounded(oracle, t, rng, one_first=one_first) == x.parity()
        else:
            raise ValueError(f"unknown algorithm id {algo}")
        successes += bool(ok)
        max_q = max(max_q, oracle.counter)
    return successes, max_q
