"""One function per experiment kind: measure, then judge against declared criteria.

Every random draw is keyed by (seed, stream, index) so results do not depend
on how trials are split across workers.  Trial loops are written as
``chunk(config, lo, hi)`` functions returning partial results, which
:func:`map_chunks` may farm out to a process pool.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .. import classical, goodbase, kernels, parityhard
from ..adeglp import cli as adeg_cli
from ..adeglp.functions import BUILDERS
from ..adeglp.lp import DegreeQuery, min_degree_result, verify
from ..bitlin import BitString
from ..noisy import iid_comparator, internal_budget, noisy_search, unit_budget
from ..oracle import OracleTable
from ..protocols import (StructuralError, ahs_b, gt, gt_b, gt_b_budget, gt_b_pp, gt_pp_budget,
                         os_accept_counts)
from ..rng import generator, stream_id, trial_rng
from . import constants as K
from .config import ConfigError, ExperimentConfig
from .stats import binomial_not_below, not_below, sigma, within, z_score

CHUNK = 2000


@dataclass
class Criterion:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Outcome:
    params: dict  # resolved parameters actually used
    stats: dict
    criteria: list[Criterion] = field(default_factory=list)
    header: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)


def workers() -> int:
    try:
        return max(1, int(os.environ.get("ADEGKIT_WORKERS", "1")))
    except ValueError:
        return 1


def map_chunks(fn: Callable, cfg: dict, total: int, chunk: int = CHUNK) -> list:
    """Results of ``fn(cfg, lo, hi)`` over consecutive index ranges, in order."""
    bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    w = workers()
    if w == 1 or len(bounds) <= 1:
        return [fn(cfg, lo, hi) for lo, hi in bounds]
    with ProcessPoolExecutor(max_workers=min(w, len(bounds))) as pool:
        return list(pool.map(fn, [cfg] * len(bounds), [b[0] for b in bounds], [b[1] for b in bounds]))


def _sum_counts(parts: list[dict]) -> dict:
    out: dict = {}
    for part in parts:
        for k, v in part.items():
            out[k] = max(out.get(k, v), v) if k.startswith("max_") else out.get(k, 0) + v
    return out


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _frac(v: Fraction) -> str:
    return _fmt(Fraction(v))


# ---------------------------------------------------------------- gt-os

def _os_params(cfg: ExperimentConfig) -> dict:
    n = cfg.n
    if n < 2:
        raise ConfigError("gt-os needs n >= 2")
    alpha = cfg.alpha or goodbase.default_alpha_os(n)
    t = cfg.t or goodbase.default_t(n, K.OS_T_FACTOR)
    m = n + alpha * t * (n - 1)
    return {"n": n, "alpha": alpha, "t": t, "m": m}


def _gt_pairs_chunk(p: dict, lo: int, hi: int) -> dict:
    """Random (i, x, r) triples on one copy; a base with t = 1 is distributed like any copy."""
    n, alpha = p["n"], p["alpha"]
    base = goodbase.build_os_base(n, alpha, 1)
    budget = gt_b_budget(n, alpha)
    out = {"errors": 0, "equal_errors": 0, "max_queries": 0, "over_budget": 0}
    for k in range(lo, hi):
        rng = trial_rng(p["seed"], "gt-os/pair", k)
        sample = goodbase.sample(base, generator(p["seed"], "gt-os/pair-r", k))
        i = BitString(n, rng.getrandbits(n))
        xv = rng.getrandbits(n)
        while xv == i.value:
            xv = rng.getrandbits(n)
        x = BitString(n, xv)
        table = OracleTable(sample, x)
        out["errors"] += gt_b(table, sample, i, 1) != gt(i, x)
        q = table.counter
        same = OracleTable(sample, i)
        out["equal_errors"] += gt_b(same, sample, i, 1) != 1
        q = max(q, same.counter)
        out["max_queries"] = max(out["max_queries"], q)
        out["over_budget"] += q > budget
    return out


def _gt_matrix_chunk(p: dict, lo: int, hi: int) -> list:
    n, alpha, t = p["n"], p["alpha"], p["t"]
    base = goodbase.build_os_base(n, alpha, t)
    Z = 1 << n
    vals = np.arange(Z)
    le = vals[None, :] <= vals[:, None]  # [i, x]: x <= i
    rows = []
    for k in range(lo, hi):
        sample = goodbase.sample(base, generator(p["seed"], "gt-os/r", k))
        counts = os_accept_counts(sample)
        err = np.where(le, t - counts, counts)
        flat = int(np.argmax(err))
        iv, xv = divmod(flat, Z)
        rows.append({"index": k, "max_err": int(err[iv, xv]), "i": iv, "x": xv,
                     "diag_err": int(np.trace(err)), "base_hash": base.hash})
    return rows


def run_gt_os(cfg: ExperimentConfig) -> Outcome:
    p = _os_params(cfg)
    n, alpha, t = p["n"], p["alpha"], p["t"]
    if cfg.r_samples and n > cfg.caps["max_exact_n"]:
        raise ConfigError(f"exhaustive matrices need n <= {cfg.caps['max_exact_n']}")
    if cfg.r_samples and p["m"] > cfg.caps["max_base_strings"]:
        raise ConfigError(f"base of {p['m']} strings exceeds the cap")
    work = dict(p, seed=cfg.seed)
    out = Outcome(p, {}, header=["variant", "n", "alpha", "t", "c", "r_seed", "i", "x_or_s", "mean_W", "max_dev"])
    if cfg.trials:
        c = _sum_counts(map_chunks(_gt_pairs_chunk, work, cfg.trials, 250))
        depth = (n - 1).bit_length()
        bound = depth * 2.0 ** -alpha
        freq = c["errors"] / cfg.trials
        limit = bound + K.SIGMAS * sigma(bound, cfg.trials)
        out.stats["pairs"] = {"trials": cfg.trials, "errors": c["errors"], "frequency": freq,
                              "bound": bound, "bound_plus_3sigma": limit, "equal_errors": c["equal_errors"],
                              "max_queries": c["max_queries"], "query_budget": gt_b_budget(n, alpha)}
        out.criteria.append(Criterion("per-pair error bound", freq <= limit,
                                      f"error frequency {freq:.4f} vs log2(n) 2^-alpha + 3 sigma = {limit:.4f}"))
        out.criteria.append(Criterion("one-sided on x = i", c["equal_errors"] == 0,
                                      f"{c['equal_errors']} errors over {cfg.trials} equal pairs"))
        out.criteria.append(Criterion("query budget", c["over_budget"] == 0,
                                      f"max {c['max_queries']} queries, budget {gt_b_budget(n, alpha)}"))
    if cfg.r_samples:
        rows = [r for part in map_chunks(_gt_matrix_chunk, work, cfg.r_samples, 4) for r in part]
        threshold = K.GT_UNIFORM_DEVIATION
        good = sum(Fraction(r["max_err"], t) <= threshold for r in rows)
        diag = sum(r["diag_err"] for r in rows)
        rate = float(K.GOOD_SAMPLE_RATE)
        limit = rate - K.SIGMAS * sigma(rate, len(rows))
        worst = max(Fraction(r["max_err"], t) for r in rows)
        out.stats["uniform"] = {"r_samples": len(rows), "good": good, "frequency": good / len(rows),
                                "threshold": _frac(threshold), "required": limit, "worst_max_dev": _frac(worst),
                                "diagonal_errors": diag, "cells_per_sample": 4 ** n, "copies_per_cell": t}
        out.criteria.append(Criterion("uniform deviation bound", good / len(rows) >= limit,
                                      f"{good}/{len(rows)} samples with max |q - GT| <= {_frac(threshold)}; "
                                      f"need >= {limit:.4f}"))
        out.criteria.append(Criterion("one-sided on x = i (all copies)", diag == 0,
                                      f"{diag} rejecting copies on x = i over all samples"))
        for r in rows:
            dev = Fraction(r["max_err"], t)
            out.rows.append(["os", n, alpha, t, "", f"{cfg.seed}:{r['index']}", format(r["i"], f"0{n}b"),
                             format(r["x"], f"0{n}b"), _fmt(float(dev)), _fmt(float(dev))])
    return out


# ---------------------------------------------------------------- gt-ospp

def _ospp_params(cfg: ExperimentConfig) -> dict:
    n = cfg.n
    if n < 2 or n & (n - 1):
        raise ConfigError("gt-ospp needs n a power of two, at least 2")
    alpha = cfg.alpha or K.OSPP_ALPHA
    c = cfg.c or K.CALIBRATED_C
    t = cfg.t or goodbase.default_t(n, K.OS_T_FACTOR)
    per_copy = len(goodbase.ospp_templates(n, c)) * alpha * c * (n.bit_length() - 1)
    return {"n": n, "alpha": alpha, "c": c, "t": t, "m": n + t * per_copy, "strings_per_copy": per_copy}


def _ospp_chunk(p: dict, lo: int, hi: int) -> dict:
    n, alpha, c = p["n"], p["alpha"], p["c"]
    base = goodbase.build_ospp_base(n, alpha, 1, c)
    budget = gt_pp_budget(n, alpha, c)
    out = {"errors": 0, "equal_errors": 0, "structural": 0, "max_queries": 0, "over_budget": 0}
    for k in range(lo, hi):
        rng = trial_rng(p["seed"], "gt-ospp/pair", k)
        sample = goodbase.sample(base, generator(p["seed"], "gt-ospp/r", k))
        i = BitString(n, rng.getrandbits(n))
        x = BitString(n, rng.getrandbits(n))
        for target, key in ((x, "errors"), (i, "equal_errors")):
            table = OracleTable(sample, target)
            try:
                out[key] += gt_b_pp(table, sample, i, 1) != gt(i, target)
            except StructuralError:
                out["structural"] += 1
            out["max_queries"] = max(out["max_queries"], table.counter)
            out["over_budget"] += table.counter > budget
    return out


def run_gt_ospp(cfg: ExperimentConfig) -> Outcome:
    p = _ospp_params(cfg)
    n, alpha, c = p["n"], p["alpha"], p["c"]
    if p["strings_per_copy"] > cfg.caps["max_base_strings"]:
        raise ConfigError(f"one copy holds {p['strings_per_copy']} strings, over the cap")
    out = Outcome(p, {}, header=["check", "trials", "failures", "frequency", "target"])
    trials = cfg.trials
    if trials:
        s = _sum_counts(map_chunks(_ospp_chunk, dict(p, seed=cfg.seed), trials, 100))
        ok = trials - s["errors"]
        target = float(K.NOISY_SEARCH_SUCCESS)
        out.stats["pairs"] = {"trials": trials, "successes": ok, "frequency": ok / trials,
                              "z_vs_target": z_score(ok, trials, target), **s,
                              "query_budget": gt_pp_budget(n, alpha, c)}
        out.criteria.append(Criterion("per-pair success", not_below(ok, trials, target, K.SIGMAS),
                                      f"{ok}/{trials} correct, target {_frac(K.NOISY_SEARCH_SUCCESS)}"))
        out.criteria.append(Criterion("x = i accepted", s["equal_errors"] == 0,
                                      f"{s['equal_errors']} rejections on x = i"))
        out.criteria.append(Criterion("query budget", s["over_budget"] == 0 and s["structural"] == 0,
                                      f"max {s['max_queries']} queries, budget {gt_pp_budget(n, alpha, c)}, "
                                      f"{s['structural']} exhausted copies"))
        out.rows.append(["random pairs", trials, s["errors"], _fmt(s["errors"] / trials), _fmt(1 - target)])
    if n <= cfg.caps["max_exact_n"]:
        # noiseless stand-in: exact prefix comparisons replace the fingerprints
        base = goodbase.build_ospp_base(n, alpha, 1, 1)
        sample = goodbase.sample(base, generator(cfg.seed, "gt-ospp/exact", 0))
        wrong = 0
        for xv in range(1 << n):
            table = OracleTable(sample, BitString(n, xv))
            for iv in range(1 << n):
                i = BitString(n, iv)
                wrong += gt_b_pp(table, sample, i, 1, repeats=1, exact=True) != int(xv <= iv)
        out.stats["noiseless_sweep"] = {"pairs": 4 ** n, "wrong": wrong}
        out.criteria.append(Criterion("noiseless sweep", wrong == 0, f"{wrong} wrong of {4 ** n} pairs"))
        out.rows.append(["noiseless sweep", 4 ** n, wrong, _fmt(wrong / 4 ** n), "0"])
    return out


# ---------------------------------------------------------------- ahs

def _ahs_params(cfg: ExperimentConfig) -> dict:
    n = cfg.n
    if n < 2:
        raise ConfigError("ahs needs n >= 2")
    alpha = cfg.alpha or K.AHS_ALPHA
    t = cfg.t or goodbase.default_t(n, K.AHS_T_FACTOR)
    return {"n": n, "alpha": alpha, "t": t, "m": n + alpha * t * n * (n + 1) // 2}


def _ahs_mismatch_chunk(p: dict, lo: int, hi: int) -> dict:
    n, alpha = p["n"], p["alpha"]
    base = goodbase.build_ahs_base(n, alpha, 1)
    out = {"accepts": 0, "wrong_queries": 0}
    for k in range(lo, hi):
        rng = trial_rng(p["seed"], "ahs/mismatch", k)
        i = 1 + rng.randrange(n)
        length = 1 + rng.randrange(n - i + 1)
        s = format(rng.getrandbits(length), f"0{length}b")
        while True:
            x = BitString(n, rng.getrandbits(n))
            if str(x)[i - 1:i - 1 + length] != s:
                break
        sample = goodbase.sample(base, generator(p["seed"], "ahs/r", k))
        table = OracleTable(sample, x)
        out["accepts"] += ahs_b(table, sample, i, s, 1)
        out["wrong_queries"] += table.counter != alpha
    return out


def _ahs_match_chunk(p: dict, lo: int, hi: int) -> dict:
    """Every (i, s): s is written at i into a fixed background string of its length."""
    n, alpha = p["n"], p["alpha"]
    base = goodbase.build_ahs_base(n, alpha, 1)
    out = {"cases": 0, "rejects": 0, "wrong_queries": 0}
    for k in range(lo, hi):
        rng = trial_rng(p["seed"], "ahs/match", k)
        sample = goodbase.sample(base, generator(p["seed"], "ahs/match-r", k))
        for length in range(1, n + 1):
            background = format(rng.getrandbits(n), f"0{n}b")
            for i in range(1, n - length + 2):
                for sv in range(1 << length):
                    s = format(sv, f"0{length}b")
                    x = BitString.parse(background[:i - 1] + s + background[i - 1 + length:])
                    table = OracleTable(sample, x)
                    out["cases"] += 1
                    out["rejects"] += ahs_b(table, sample, i, s, 1) != 1
                    out["wrong_queries"] += table.counter != alpha
    return out


def run_ahs(cfg: ExperimentConfig) -> Outcome:
    p = _ahs_params(cfg)
    alpha = p["alpha"]
    work = dict(p, seed=cfg.seed)
    out = Outcome(p, {}, header=["case", "trials", "accepts", "frequency", "expected", "z_score"])
    if cfg.trials:
        s = _sum_counts(map_chunks(_ahs_mismatch_chunk, work, cfg.trials))
        expected = 2.0 ** -alpha
        z = z_score(s["accepts"], cfg.trials, expected)
        out.stats["mismatch"] = {"trials": cfg.trials, "accepts": s["accepts"],
                                 "frequency": s["accepts"] / cfg.trials, "expected": expected, "z_score": z,
                                 "wrong_query_counts": s["wrong_queries"]}
        out.criteria.append(Criterion("mismatch acceptance 2^-alpha", within(s["accepts"], cfg.trials, expected),
                                      f"{s['accepts']}/{cfg.trials} accepted, z = {z:.2f}"))
        out.criteria.append(Criterion("exactly alpha queries (mismatch)", s["wrong_queries"] == 0,
                                      f"{s['wrong_queries']} runs with a count other than {alpha}"))
        out.rows.append(["mismatch", cfg.trials, s["accepts"], _fmt(s["accepts"] / cfg.trials), _fmt(expected),
                         _fmt(z)])
    if cfg.r_samples:
        s = _sum_counts(map_chunks(_ahs_match_chunk, work, cfg.r_samples, 1))
        out.stats["match"] = {"r_samples": cfg.r_samples, **s}
        out.criteria.append(Criterion("matches always accepted", s["rejects"] == 0,
                                      f"{s['rejects']} rejections over {s['cases']} matching (i, s, x)"))
        out.criteria.append(Criterion("exactly alpha queries (match)", s["wrong_queries"] == 0,
                                      f"{s['wrong_queries']} runs with a count other than {alpha}"))
        out.rows.append(["match", s["cases"], s["cases"] - s["rejects"],
                         _fmt((s["cases"] - s["rejects"]) / s["cases"]), "1", ""])
    return out


# ---------------------------------------------------------------- parity-hardness

def _ph_params(cfg: ExperimentConfig) -> dict:
    n = cfg.n
    if n < 2:
        raise ConfigError("parity-hardness needs n >= 2")
    alpha = cfg.alpha or goodbase.default_alpha_os(n)
    t = cfg.t or goodbase.default_t(n, K.OS_T_FACTOR)
    m = n + alpha * t * (n - 1)
    d_clamped, d_raw = parityhard.default_d(n, m)
    d = d_clamped if cfg.d is None else cfg.d
    return {"n": n, "alpha": alpha, "t": t, "m": m, "d": d, "d_paper": d_raw}


def _bad_subset_chunk(p: dict, lo: int, hi: int) -> int:
    base = goodbase.build_os_base(p["n"], p["alpha"], p["t"])
    return sum(not parityhard.has_bad_subset(goodbase.sample(base, generator(p["seed"], "parity-hardness/r", k)),
                                             p["d"]) for k in range(lo, hi))


def _char_sum_chunk(p: dict, lo: int, hi: int) -> dict:
    n = p["n"]
    base = goodbase.build_os_base(n, p["alpha"], p["t"])
    out = {"checked": 0, "mismatches": 0, "nonzero": 0}
    for k in range(lo, hi):
        rng = trial_rng(p["seed"], "parity-hardness/T", k)
        sample = goodbase.sample(base, generator(p["seed"], "parity-hardness/sum-r", k))
        if rng.randrange(4) == 0:
            T = list(range(1, n + 1))  # the basis alone XORs to 1^n
        else:
            size = 1 + rng.randrange(8)
            T = sorted({1 + rng.randrange(base.m) for _ in range(size)})
        try:
            s = parityhard.character_sum(sample, T, "both")
        except AssertionError:
            out["mismatches"] += 1
            continue
        out["checked"] += 1
        out["nonzero"] += s != 0
    return out


def run_parity_hardness(cfg: ExperimentConfig) -> Outcome:
    p = _ph_params(cfg)
    if p["m"] > cfg.caps["max_base_strings"]:
        raise ConfigError(f"base of {p['m']} strings exceeds the cap")
    work = dict(p, seed=cfg.seed)
    out = Outcome(p, {}, header=["base_hash", "n", "m", "d", "samples", "frequency_no_cover", "wall_time"])
    if p["d_paper"] is not None and p["d_paper"] < 0:
        p["note"] = f"the paper's d = floor(n / (4 log2 m)) - 1 = {p['d_paper']} is negative; clamped to 0"
    if cfg.r_samples:
        clean = sum(map_chunks(_bad_subset_chunk, work, cfg.r_samples, 10))
        ok, pv = binomial_not_below(clean, cfg.r_samples, float(K.GOOD_SAMPLE_RATE))
        base = goodbase.build_os_base(p["n"], p["alpha"], p["t"])
        out.stats["no_bad_subset"] = {"samples": cfg.r_samples, "clean": clean,
                                      "frequency": clean / cfg.r_samples, "p_value_below_2_3": pv,
                                      "base_hash": base.hash}
        out.criteria.append(Criterion("no-bad-subset frequency >= 2/3", ok,
                                      f"{clean}/{cfg.r_samples} clean at d = {p['d']}; one-sided p = {pv:.3g}"))
        out.rows.append([base.hash, p["n"], p["m"], p["d"], cfg.r_samples, _fmt(clean / cfg.r_samples), ""])
    if cfg.trials:
        if p["n"] > parityhard.DIRECT_SUM_CAP:
            raise ConfigError(f"direct character sums need n <= {parityhard.DIRECT_SUM_CAP}")
        s = _sum_counts(map_chunks(_char_sum_chunk, work, cfg.trials, 100))
        out.stats["character_sums"] = s
        out.criteria.append(Criterion("closed form equals direct sum", s["mismatches"] == 0,
                                      f"{s['mismatches']} mismatches over {cfg.trials} (sample, T) pairs"))
    return out


# ---------------------------------------------------------------- adeg

def run_adeg(cfg: ExperimentConfig) -> Outcome:
    fn = cfg.fn or "parity"
    if fn not in adeg_cli.FUNCTIONS:
        raise ConfigError(f"unknown function {fn!r}")
    eps = cfg.eps if cfg.eps is not None else Fraction(1, 3)
    f = BUILDERS[fn](cfg.n)
    mode = cfg.mode or adeg_cli.default_mode(fn, cfg.n, f.N)
    d, res = min_degree_result(f, eps, mode)
    ok = verify(DegreeQuery(f, d, eps, mode), res.certificate, Fraction(1, 10**9))
    params = {"fn": fn, "n": cfg.n, "N": f.N, "epsilon": _frac(eps), "mode": mode}
    out = Outcome(params, {"degree": d, "certificate_hash": res.certificate_hash, "backend": res.backend,
                           "notes": res.notes},
                  header=["fn", "n", "N", "eps", "mode", "degree", "certificate_hash", "backend"])
    out.criteria.append(Criterion("certificate re-verifies", ok, f"degree {d} certificate {res.certificate_hash}"))
    if fn == "parity" and eps < Fraction(1, 2):
        out.criteria.append(Criterion("parity needs full degree", d == cfg.n, f"degree {d}, n = {cfg.n}"))
    out.rows.append([fn, cfg.n, f.N, _frac(eps), mode, d, res.certificate_hash, res.backend])
    return out


# ---------------------------------------------------------------- classical

def classical_bounds(algorithm: str, n: int, t: int) -> list[tuple[str, Fraction | None]]:
    """(formula text, value) for each stated lower bound; None where a formula is undefined."""
    f = n - t
    if algorithm == "os-recon":
        return [("2^-(n-t)", Fraction(1, 2 ** f))]
    if algorithm == "os-decision":
        return [("1/2 + 2^-(n-t)-1", Fraction(1, 2) + Fraction(1, 2 ** (f + 1)))]
    if algorithm == "hs-recon":
        return [("2^-(n-t)/(n-t+1)", Fraction(1, 2 ** f * (f + 1)))]
    if algorithm == "hs-decision":
        stated = Fraction(1, 2) + Fraction(1, 2 ** (f + 1) * f) if f else None
        return [("1/2 + 2^-(n-t)-1/(n-t)", stated),
                ("1/2 + 2^-(n-t)-1/(n-t+1)", Fraction(1, 2) + Fraction(1, 2 ** (f + 1) * (f + 1)))]
    raise ConfigError(f"unknown algorithm {algorithm!r}")


def query_budget(algorithm: str, n: int, t: int) -> tuple[int, bool]:
    """(budget, whether the maximum must equal it exactly)."""
    steps = min(t, n)
    return {"os-recon": (t, True), "os-decision": (t + 2, True),
            "hs-recon": (2 * steps + 2, False), "hs-decision": (2 * steps + 3, False)}[algorithm]


def _exhaustive(algorithm: str, n: int) -> dict:
    out = {"inputs": 0, "wrong": 0, "max_queries": 0, "counterexamples": []}
    rules = (True,) if algorithm == "os-exact" else (True, False)
    for one_first in rules:
        for xv in range(1 << n):
            x = BitString(n, xv)
            if algorithm == "os-exact":
                oracle = classical.SortedOracle(x)
                got = classical.os_binary_search(oracle)
            else:
                oracle = classical.SubstringOracle(x)
                got = classical.hs_reconstruct(oracle, one_first)
            out["inputs"] += 1
            out["max_queries"] = max(out["max_queries"], oracle.counter)
            if got != x:
                out["wrong"] += 1
                if len(out["counterexamples"]) < 20:
                    out["counterexamples"].append({"x": str(x), "got": str(got), "one_first": one_first})
    return out


def run_classical(cfg: ExperimentConfig) -> Outcome:
    algo = cfg.algorithm
    n = cfg.n
    if algo in ("os-exact", "hs-exact"):
        if n > 16:
            raise ConfigError("exhaustive sweeps need n <= 16")
        s = _exhaustive(algo, n)
        budget = n if algo == "os-exact" else 2 * n + 2
        out = Outcome({"algorithm": algo, "n": n}, s, header=["algorithm", "n", "inputs", "wrong", "max_queries"])
        out.criteria.append(Criterion("exhaustive correctness", s["wrong"] == 0,
                                      f"{s['wrong']} wrong of {s['inputs']} runs"))
        exact = algo == "os-exact"
        ok = s["max_queries"] == budget if exact else s["max_queries"] <= budget
        out.criteria.append(Criterion("query budget", ok, f"max {s['max_queries']} queries, budget {budget}"))
        out.rows.append([algo, n, s["inputs"], s["wrong"], s["max_queries"]])
        return out
    if algo not in classical.ALGORITHMS:
        raise ConfigError(f"algorithm must be one of {sorted(classical.ALGORITHMS)} or os-exact / hs-exact")
    if cfg.t is None:
        raise ConfigError("classical runs need t")
    t = cfg.t
    if algo.startswith("os") and t > n:
        raise ConfigError("t must lie in 0..n for the OS algorithms")
    if t > 2 * n + 2:
        raise ConfigError("t must lie in 0..2n+2")
    trials = cfg.trials
    successes, max_q = kernels.classical_mc(classical.ALGORITHMS[algo], n, t, trials, cfg.seed,
                                            stream_id(f"classical/{algo}"), cfg.one_first)
    params = {"algorithm": algo, "n": n, "t": t, "one_first": cfg.one_first, "kernels": kernels.BACKEND}
    out = Outcome(params, {"trials": trials, "successes": successes,
                           "rate": successes / trials if trials else None, "max_queries": max_q},
                  header=["algorithm", "n", "t", "trials", "successes", "lower_bound_formula", "z_score", "seed"])
    bounds = classical_bounds(algo, n, min(t, n))
    results = {}
    for text, value in bounds:
        if value is None:
            out.rows.append([algo, n, t, trials, successes, text + " (undefined)", "", cfg.seed])
            continue
        z = z_score(successes, trials, float(value))
        ok = successes == trials if value == 1 else z >= -K.SIGMAS
        results[text] = {"bound": _frac(value), "z_score": z, "holds": ok}
        out.rows.append([algo, n, t, trials, successes, f"{text} = {_frac(value)}", _fmt(z), cfg.seed])
    out.stats["bounds"] = results
    stated = next((r for r in results.values()), None)
    out.criteria.append(Criterion("not below stated lower bound", stated is not None and stated["holds"],
                                  "; ".join(f"{k}: z = {v['z_score']:.2f}" for k, v in results.items())))
    budget, exact = query_budget(algo, n, t)
    ok = max_q == budget if exact else max_q <= budget
    out.stats["query_budget"] = {"budget": budget, "exact": exact}
    out.criteria.append(Criterion("query budget", ok, f"max {max_q} queries, budget {budget}"
                                  + (" (exact)" if exact else "")))
    return out


# ---------------------------------------------------------------- noisy-search

def _noisy_chunk(p: dict, lo: int, hi: int) -> dict:
    n, c, prob = p["n"], p["c"], p["p"]
    per_q = internal_budget(n, c)
    out = {"successes": 0, "confident": 0, "over_budget": 0, "max_tally": 0, "questions": 0}
    for k in range(lo, hi):
        rng = trial_rng(p["seed"], "noisy-search", k)
        key = 1 + rng.randrange(n)
        res = noisy_search(iid_comparator(key, prob, rng), n, c)
        out["successes"] += res.location == key
        out["confident"] += res.confident
        top = max(res.tallies.values(), default=0)
        out["max_tally"] = max(out["max_tally"], top)
        out["over_budget"] += top > per_q
        out["questions"] += res.questions
    return out


def run_noisy_search(cfg: ExperimentConfig) -> Outcome:
    n = cfg.n
    if n & (n - 1):
        raise ConfigError("noisy search needs n a power of two")
    c = cfg.c or K.CALIBRATED_C
    prob = float(K.NOISY_ANSWER_ACCURACY) if cfg.p is None else cfg.p
    p = {"n": n, "c": c, "p": prob, "internal_budget": internal_budget(n, c), "unit_budget": unit_budget(n, c)}
    s = _sum_counts(map_chunks(_noisy_chunk, dict(p, seed=cfg.seed), cfg.trials))
    trials = cfg.trials
    target = K.NOISY_SEARCH_SUCCESS
    rate = s["successes"] / trials if trials else 0.0
    out = Outcome(p, {"trials": trials, **s, "rate": rate, "mean_questions": s["questions"] / max(trials, 1)},
                  header=["n", "c", "p", "trials", "successes", "rate", "max_tally", "internal_budget",
                          "unit_budget"])
    out.criteria.append(Criterion("success >= 11/12", trials > 0 and Fraction(s["successes"], trials) >= target,
                                  f"{s['successes']}/{trials} = {rate:.4f} at c = {c}"))
    out.criteria.append(Criterion("per-question budgets", s["over_budget"] == 0,
                                  f"max tally {s['max_tally']}; budgets {p['internal_budget']} internal, "
                                  f"{p['unit_budget']} unit-interval"))
    out.rows.append([n, c, _fmt(prob), trials, s["successes"], _fmt(rate), s["max_tally"], p["internal_budget"],
                     p["unit_budget"]])
    return out


RUNNERS: dict[str, Callable[[ExperimentConfig], Outcome]] = {
    "gt-os": run_gt_os,
    "gt-ospp": run_gt_ospp,
    "ahs": run_ahs,
    "parity-hardness": run_parity_hardness,
    "adeg": run_adeg,
    "classical": run_classical,
    "noisy-search": run_noisy_search,
}
