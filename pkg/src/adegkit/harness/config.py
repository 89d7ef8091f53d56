"""Experiment configuration: one flat record, echoed verbatim into every report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction

KINDS = ("gt-os", "gt-ospp", "ahs", "parity-hardness", "adeg", "classical", "noisy-search")

DEFAULT_CAPS = {
    "max_n": 64,  # strings are packed in 64-bit words; search keys are not strings
    "max_trials": 10**8,
    "max_r_samples": 10**6,
    "max_base_strings": 10**7,  # m for one sampled base
    "max_exact_n": 8,  # exhaustive (i, x) matrices cost 4^n
}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    kind: str
    n: int
    alpha: int | None = None
    t: int | None = None
    c: int | None = None
    d: int | None = None
    epsilon: str | None = None  # rational text such as "1/3"
    trials: int = 0
    r_samples: int = 0
    seed: int = 0
    caps: dict = field(default_factory=dict)
    # kind-specific
    algorithm: str | None = None  # classical
    p: float | None = None  # noisy-search answer accuracy
    fn: str | None = None  # adeg
    mode: str | None = None  # adeg
    one_first: bool = True  # classical HS tie rule

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}; expected one of {KINDS}")
        if isinstance(self.epsilon, (int, float, Fraction)):
            self.epsilon = str(Fraction(self.epsilon) if not isinstance(self.epsilon, float)
                               else Fraction(repr(self.epsilon)))
        for name in ("n", "trials", "r_samples", "seed"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError(f"{name} must be an integer")
        if self.n < 1:
            raise ConfigError("n must be positive")
        if self.trials < 0 or self.r_samples < 0:
            raise ConfigError("trials and r_samples must be non-negative")
        for name in ("alpha", "t", "c"):
            v = getattr(self, name)
            # classical runs measure the t = 0 (pure guessing) end as well
            least = 0 if name == "t" and self.kind == "classical" else 1
            if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < least):
                raise ConfigError(f"{name} must be an integer >= {least}")
        if self.d is not None and (not isinstance(self.d, int) or self.d < 0):
            raise ConfigError("d must be a non-negative integer")
        caps = dict(DEFAULT_CAPS)
        unknown = set(self.caps) - set(caps)
        if unknown:
            raise ConfigError(f"unknown caps {sorted(unknown)}")
        caps.update(self.caps)
        self.caps = caps
        if self.kind != "noisy-search" and self.n > caps["max_n"]:
            raise ConfigError(f"n = {self.n} exceeds the cap {caps['max_n']}")
        if self.trials > caps["max_trials"]:
            raise ConfigError(f"trials = {self.trials} exceeds the cap {caps['max_trials']}")
        if self.r_samples > caps["max_r_samples"]:
            raise ConfigError(f"r_samples = {self.r_samples} exceeds the cap {caps['max_r_samples']}")

    @property
    def eps(self) -> Fraction | None:
        return None if self.epsilon is None else Fraction(self.epsilon)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        names = {f.name for f in fields(cls)}
        extra = set(data) - names
        if extra:
            raise ConfigError(f"unknown config fields {sorted(extra)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed config: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)
