import json
import math

import pytest
from hypothesis import given, strategies as st

import reference
from adegkit.harness import ConfigError, ExperimentConfig, hoeffding_n, hoeffding_n_one_sided, run, z_score
from adegkit.harness.cli import main as cli_main
from adegkit.harness.constants import THRESHOLDS
from adegkit.harness.stats import binomial_not_below, not_below, within

SMALL = {
    "gt-os": dict(n=4, alpha=2, t=8, trials=600, r_samples=5, seed=3),
    "gt-ospp": dict(n=4, alpha=1, t=2, c=2, trials=250, seed=1),
    "ahs": dict(n=4, alpha=2, t=4, trials=4100, r_samples=3, seed=2),
    "parity-hardness": dict(n=8, alpha=1, t=2, r_samples=25, trials=150, seed=4),
    "adeg": dict(n=2, fn="parity", epsilon="1/3"),
    "classical": dict(n=6, t=3, trials=3000, algorithm="os-decision", seed=9),
    "noisy-search": dict(n=16, c=4, p=0.75, trials=2500, seed=5),
}


def test_hoeffding_values(frozen):
    assert hoeffding_n(0.1, 0.05) == 185 == frozen["hoeffding"]["0.1,0.05"]
    assert hoeffding_n(0.05, 0.01) == frozen["hoeffding"]["0.05,0.01"]
    assert hoeffding_n(0.1, 2) == 0 and hoeffding_n(0.3, 5) == 0
    with pytest.raises(ValueError):
        hoeffding_n(0, 0.1)


@given(st.floats(0.01, 0.5), st.floats(1e-6, 0.99))
def test_hoeffding_is_minimal(eps, delta):
    n = hoeffding_n(eps, delta)
    assert n == reference.hoeffding_two_sided(eps, delta)
    assert 2 * math.exp(-2 * n * eps * eps) <= delta * (1 + 1e-12)
    if n > 0:
        assert 2 * math.exp(-2 * (n - 1) * eps * eps) > delta
    assert hoeffding_n_one_sided(eps, delta) <= n


def test_z_score_and_tests():
    assert z_score(50, 100, 0.5) == 0
    assert z_score(0, 10, 0.0) == 0 and z_score(1, 10, 0.0) == math.inf
    assert not_below(40, 100, 0.5) and not not_below(30, 100, 0.5)
    assert within(55, 100, 0.5) and not within(70, 100, 0.5)
    assert binomial_not_below(70, 100, 2 / 3)[0]
    assert not binomial_not_below(50, 100, 2 / 3)[0]


def test_thresholds_are_documented():
    value, source = THRESHOLDS["gt_uniform_deviation"]
    assert value == pytest.approx(1 / 6) and source
    assert all(entry[1] for entry in THRESHOLDS.values())


@pytest.mark.parametrize("data,match", [
    (dict(kind="nope", n=4), "unknown experiment"),
    (dict(kind="gt-os", n=0), "positive"),
    (dict(kind="gt-os", n=65), "cap"),
    (dict(kind="gt-os", n=4, alpha=0), "alpha"),
    (dict(kind="gt-os", n=4, trials=-1), "non-negative"),
    (dict(kind="gt-os", n=4, trials=10, caps={"max_trials": 5}), "cap"),
    (dict(kind="gt-os", n=4, caps={"max_speed": 5}), "unknown caps"),
    (dict(kind="gt-os", n=4, colour="red"), "unknown config"),
])
def test_config_validation(data, match):
    with pytest.raises(ConfigError, match=match):
        ExperimentConfig.from_dict(data)


def test_t_zero_only_for_classical():
    assert ExperimentConfig(kind="classical", n=4, t=0, algorithm="os-recon").t == 0
    with pytest.raises(ConfigError, match="t must"):
        ExperimentConfig(kind="gt-os", n=4, t=0)


def test_config_round_trip():
    cfg = ExperimentConfig(kind="adeg", n=3, epsilon=0.25, fn="parity")
    assert cfg.epsilon == "1/4"
    again = ExperimentConfig.from_json(cfg.to_json())
    assert again == cfg
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("[1, 2]")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("{")


@pytest.mark.parametrize("kind", sorted(SMALL))
def test_reports_are_reproducible(kind, monkeypatch):
    cfg = ExperimentConfig(kind=kind, **SMALL[kind])
    monkeypatch.setenv("ADEGKIT_WORKERS", "1")
    first = run(cfg)
    second = run(cfg)
    monkeypatch.setenv("ADEGKIT_WORKERS", "4")
    parallel = run(cfg)
    body = json.dumps(first.body(), sort_keys=True, default=str)
    assert json.dumps(second.body(), sort_keys=True, default=str) == body
    assert json.dumps(parallel.body(), sort_keys=True, default=str) == body
    assert first.csv_text() == second.csv_text() == parallel.csv_text()
    assert first.criteria and first.csv_text().count("\n") >= 2
    other = run(ExperimentConfig(kind=kind, **dict(SMALL[kind], seed=SMALL[kind].get("seed", 0) + 1)))
    if kind != "adeg":
        assert json.dumps(other.body(), sort_keys=True, default=str) != body


def test_cli_writes_report(tmp_path, capsys):
    code = cli_main(["adeg", "--n", "3", "--fn", "parity", "--eps", "1/3", "--out", str(tmp_path)])
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["stats"]["degree"] == 3 and report["passed"]
    assert (tmp_path / "data.csv").stat().st_size > 0
    assert "PASS" in capsys.readouterr().out


def test_cli_config_file_and_errors(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(dict(kind="classical", **SMALL["classical"])))
    assert cli_main(["classical", "--config", str(cfg), "--out", str(tmp_path / "a"), "--quiet"]) == 0
    assert cli_main(["classical", "--config", str(cfg), "--out", str(tmp_path / "b"), "--quiet"]) == 0
    assert (tmp_path / "a" / "data.csv").read_bytes() == (tmp_path / "b" / "data.csv").read_bytes()
    assert cli_main(["gt-os", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert cli_main(["gt-os", "--n", "99", "--out", str(tmp_path)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert cli_main(["ahs", "--config", str(bad), "--out", str(tmp_path)]) == 2
    assert "adegkit:" in capsys.readouterr().err


def test_cli_failing_criterion_exits_one(tmp_path):
    # a single r sample at alpha = 1 and t = 1 cannot keep every pair within 1/6
    code = cli_main(["gt-os", "--n", "4", "--alpha", "1", "--t", "1", "--trials", "300", "--r-samples", "40",
                     "--out", str(tmp_path), "--quiet"])
    assert code == 1
