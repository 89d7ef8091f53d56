"""Compiled kernels against the pure-Python fallback: timings and agreement.

Run with ``python benchmarks/bench_kernels.py [--repeat 3]``.  Each case is
timed on both backends and the outputs are compared; a disagreement aborts.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from adegkit import goodbase, kernels
from adegkit.goodbase import halving_tree
from adegkit.protocols import os_copy_strings
from adegkit.rng import generator, stream_id


def _os_case(n: int, alpha: int, t: int):
    base = goodbase.build_os_base(n, alpha, t)
    sample = goodbase.sample(base, generator(1, "bench", n))
    nodes = halving_tree(n)
    eq = np.array([nd.eq_next for nd in nodes], dtype=np.int64)
    ne = np.array([nd.ne_next for nd in nodes], dtype=np.int64)
    return (os_copy_strings(sample), eq, ne, n)


def cases():
    rng = np.random.default_rng(7)
    vals = rng.integers(0, 1 << 20, size=300, dtype=np.uint64)
    return [
        ("gf2_rank 2000 x 64-bit", "gf2_rank", (rng.integers(0, 2**63, size=2000, dtype=np.uint64),)),
        ("xor_cover m=300 d=4 (miss)", "xor_cover", (vals, 4, (1 << 21) - 1)),
        ("char_sum n=20", "char_sum", (0b1011_0110_1110_0101_1001, 20)),
        ("os_final_bits n=6 t=1040", "os_final_bits", _os_case(6, 3, 1040)),
        ("os_final_bits n=8 t=1387", "os_final_bits", _os_case(8, 4, 1387)),
        ("classical_mc hs-decision 2e4", "classical_mc", (3, 10, 5, 20_000, 1, stream_id("bench"))),
        ("classical_mc os-decision 2e4", "classical_mc", (1, 10, 5, 20_000, 1, stream_id("bench"))),
    ]


def _time(fn, args, repeat: int):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def _same(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not available; build it with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'case':34s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, name, call_args in cases():
        tp, rp = _time(getattr(kernels.python, name), call_args, args.repeat)
        tc, rc = _time(getattr(kernels.compiled, name), call_args, args.repeat)
        if name == "xor_cover":
            agree = (rp is None) == (rc is None)  # either may return a different valid cover
        else:
            agree = _same(rp, rc)
        if not agree:
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        print(f"{label:34s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
