"""``adegkit <kind>``: run one experiment, write report.json and data.csv.

Exit status is 0 when every declared criterion passes, 1 when one fails and
2 on a malformed configuration.  ``ADEGKIT_WORKERS`` sets the process count.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import KINDS, ConfigError, ExperimentConfig
from .runner import run

FLAGS = ("n", "alpha", "t", "c", "d", "trials", "r_samples", "seed")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adegkit", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        s = sub.add_parser(kind, help=f"run a {kind} experiment")
        s.add_argument("--config", help="JSON file with ExperimentConfig fields; flags override it")
        s.add_argument("--out", default=".", help="directory for report.json and data.csv")
        for name in FLAGS:
            s.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
        s.add_argument("--eps", dest="epsilon", help="rational such as 1/3")
        s.add_argument("--algorithm")
        s.add_argument("--p", dest="p", type=float)
        s.add_argument("--fn")
        s.add_argument("--mode", choices=("full", "domain"))
        s.add_argument("--zero-first", dest="one_first", action="store_false", default=None,
                       help="HS tie rule: try 0 before 1")
        s.add_argument("--quiet", action="store_true")
    return p


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if args.config:
        with open(args.config) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"malformed config: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        if data.get("kind", args.kind) != args.kind:
            raise ConfigError(f"config kind {data['kind']!r} does not match subcommand {args.kind!r}")
    data["kind"] = args.kind
    for name in FLAGS + ("epsilon", "algorithm", "p", "fn", "mode", "one_first"):
        v = getattr(args, name)
        if v is not None:
            data[name] = v
    if "n" not in data:
        raise ConfigError("n is required")
    return ExperimentConfig.from_dict(data)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        report = run(config)
    except (ConfigError, OSError) as exc:
        print(f"adegkit: {exc}", file=sys.stderr)
        return 2
    report.write(args.out)
    if not args.quiet:
        for c in report.criteria:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
