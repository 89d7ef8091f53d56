"""Run a configured experiment and write ``report.json`` and ``data.csv``."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from pathlib import Path

from .. import __version__
from .config import ExperimentConfig
from .experiments import RUNNERS, Criterion

VOLATILE = ("wall_time", "version")


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    params: dict
    stats: dict
    criteria: list[Criterion]
    header: list[str]
    rows: list[list]
    wall_time: float
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "params": self.params,
            "stats": self.stats,
            "criteria": [c.to_dict() for c in self.criteria],
            "passed": self.passed,
            "wall_time": self.wall_time,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str) + "\n"

    def body(self) -> dict:
        """The report without the fields that legitimately differ between reruns."""
        return {k: v for k, v in self.to_dict().items() if k not in VOLATILE}

    def csv_text(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return out.getvalue()

    def write(self, outdir: str | Path) -> tuple[Path, Path]:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        rj = outdir / "report.json"
        dc = outdir / "data.csv"
        rj.write_text(self.to_json())
        dc.write_text(self.csv_text())
        return rj, dc


def run(config: ExperimentConfig) -> ExperimentReport:
    start = time.perf_counter()
    outcome = RUNNERS[config.kind](config)
    elapsed = time.perf_counter() - start
    return ExperimentReport(config, outcome.params, outcome.stats, outcome.criteria, outcome.header,
                            outcome.rows, round(elapsed, 3))
