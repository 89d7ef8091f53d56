"""``adeg``: least degree of a built-in function, printed as JSON."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .functions import make_ahs, make_hs, make_os, make_parity
from .lp import BACKENDS, FULL_CAP, MODES, CapExceeded, SolverFailure, min_degree_result

FUNCTIONS = {"parity": make_parity, "os": make_os, "hs": make_hs, "ahs": make_ahs}


def default_mode(fn: str, n: int, N: int) -> str:
    if fn in ("hs", "ahs") and n >= 4 or N > FULL_CAP:
        return "domain"
    return "full"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adeg", description=__doc__)
    p.add_argument("--fn", required=True, choices=sorted(FUNCTIONS))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--eps", default="1/3", type=Fraction, help="rational such as 1/3 or 0.25")
    p.add_argument("--mode", choices=MODES, help="default: domain for hs/ahs at n >= 4 or when 2^N is over the cap, else full")
    p.add_argument("--backend", choices=BACKENDS, default="auto")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        f = FUNCTIONS[args.fn](args.n)
        mode = args.mode or default_mode(args.fn, args.n, f.N)
        d, res = min_degree_result(f, args.eps, mode, args.backend)
    except (CapExceeded, ValueError) as exc:
        print(f"adeg: {exc}", file=sys.stderr)
        return 2
    except SolverFailure as exc:
        print(f"adeg: solver failure: {exc}", file=sys.stderr)
        return 3
    out = {"fn": args.fn, "n": args.n, "N": f.N, "eps": str(args.eps), "mode": mode, "degree": d,
           "certificate_hash": res.certificate_hash, "backend": res.backend}
    print(json.dumps(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
