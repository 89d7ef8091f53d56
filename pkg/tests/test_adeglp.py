import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import reference
from adegkit.adeglp import (CapExceeded, DegreeQuery, PartialBoolFn, feasible, make_ahs, make_hs, make_os,
                            make_parity, min_degree, min_degree_result, threshold_feasible, verify,
                            verify_threshold)
from adegkit.adeglp.cli import main as adeg_main
from adegkit.adeglp.lp import evaluate, moebius

THIRD = Fraction(1, 3)


def table(f):
    return dict(f.domain)


def test_os2_domain():
    f = make_os(2)
    assert {f.point_text(p): v for p, v in f.domain} == {"1111": 0, "0111": 1, "0011": 1, "0001": 0}


def test_function_sizes():
    assert make_hs(2).N == 7
    assert make_ahs(2).N == 10
    assert make_parity(3).is_total and not make_os(2).is_total


def test_hs_inputs_are_substring_indicators():
    f = make_hs(2)
    assert f.input_names == ("", "0", "1", "00", "01", "10", "11")
    point, value = f.domain[0b10]
    assert f.point_text(point) == "1110010" and value == 1


def test_partial_function_validation():
    with pytest.raises(ValueError):
        PartialBoolFn(2, ((0, 1), (0, 0)))
    with pytest.raises(ValueError):
        PartialBoolFn(2, ((4, 1),))
    with pytest.raises(ValueError):
        PartialBoolFn(2, ((1, 2),))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_parity_degree(frozen, n):
    assert min_degree(make_parity(n), THIRD) == n == frozen["parity_degree_third"][str(n)]


def test_parity_below_full_degree_is_refuted_exactly():
    res = feasible(DegreeQuery(make_parity(2), 1, THIRD, "full"), "rational")
    assert not res.feasible
    assert any("infeasibility proved" in note for note in res.notes)


def test_parity_one_at_large_error():
    assert min_degree(make_parity(1), Fraction("0.49")) == 1


def test_os_degrees(frozen):
    assert min_degree(make_os(2), 0, "full", "rational") == frozen["os4_degree_exact_full"] == 2
    assert min_degree(make_os(3), 0, "full", "rational") == frozen["os8_degree_exact_full"] == 3


def test_os4_decision_tree_polynomial():
    values = [reference.os4_decision_tree(format(y, "04b")) for y in range(16)]
    coeffs = {m: Fraction(c) for m, c in enumerate(moebius(values)) if c}
    assert max(bin(m).count("1") for m in coeffs) == 2
    assert verify(DegreeQuery(make_os(2), 2, Fraction(0), "full"), coeffs)
    assert all(evaluate(coeffs, y) == values[y] for y in range(16))


def test_interpolation_is_always_feasible():
    f = PartialBoolFn(3, tuple((y, (y * 5 + 1) % 3 % 2) for y in range(8)))
    assert feasible(DegreeQuery(f, 3, Fraction(0), "full")).feasible


def test_certificates_verify():
    for f, eps, mode in [(make_os(2), THIRD, "full"), (make_hs(2), THIRD, "domain"), (make_ahs(2), 0, "full")]:
        d, res = min_degree_result(f, eps, mode)
        assert verify(DegreeQuery(f, d, Fraction(eps), mode), res.certificate)
        assert min_degree(f, eps, mode) == reference.approx_degree(f.N, table(f), float(eps), mode == "full")


@pytest.mark.parametrize("backend", ["rational", "simplex", "float"])
@pytest.mark.parametrize("build,n", [(make_parity, 3), (make_os, 2), (make_hs, 2)])
@pytest.mark.parametrize("eps", [Fraction(0), THIRD, Fraction(1, 10)])
def test_backends_agree(backend, build, n, eps):
    f = build(n)
    want = reference.approx_degree(f.N, table(f), float(eps), True)
    assert min_degree(f, eps, "full", backend) == want


partial_fns = st.integers(2, 4).flatmap(
    lambda N: st.dictionaries(st.integers(0, (1 << N) - 1), st.integers(0, 1), min_size=1)
    .map(lambda dom: PartialBoolFn(N, tuple(sorted(dom.items())))))
errors = st.sampled_from([Fraction(0), Fraction(1, 4), THIRD, Fraction(2, 5)])


@settings(max_examples=40)
@given(partial_fns, errors, st.booleans())
def test_degree_matches_fourier_reference(f, eps, full):
    mode = "full" if full else "domain"
    assert min_degree(f, eps, mode) == reference.approx_degree(f.N, table(f), float(eps), full)


@settings(max_examples=25)
@given(partial_fns, errors)
def test_full_implies_domain_and_monotone(f, eps):
    full = [feasible(DegreeQuery(f, d, eps, "full")).feasible for d in range(f.N + 1)]
    dom = [feasible(DegreeQuery(f, d, eps, "domain")).feasible for d in range(f.N + 1)]
    assert full == sorted(full) and dom == sorted(dom)
    assert all(b for a, b in zip(full, dom) if a)
    looser = [feasible(DegreeQuery(f, d, eps + Fraction(1, 20), "full")).feasible for d in range(f.N + 1)]
    assert all(b for a, b in zip(full, looser) if a)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_parity_threshold_degree(frozen, n):
    f = make_parity(n)
    top = threshold_feasible(f, n)
    assert top.feasible and verify_threshold(f, n, top.certificate)
    assert not threshold_feasible(f, n - 1).feasible
    assert frozen["parity_threshold_degree"][str(n)] == n


@settings(max_examples=25)
@given(partial_fns)
def test_threshold_matches_reference(f):
    want = reference.threshold_degree(f.N, table(f))
    got = next(d for d in range(f.N + 1) if threshold_feasible(f, d).feasible)
    assert got == want


def test_bad_queries():
    with pytest.raises(ValueError):
        DegreeQuery(make_parity(2), -1, THIRD)
    with pytest.raises(ValueError):
        DegreeQuery(make_parity(2), 1, THIRD, "sideways")
    with pytest.raises(ValueError):
        feasible(DegreeQuery(make_parity(2), 1, THIRD), "quantum")
    with pytest.raises(CapExceeded):
        feasible(DegreeQuery(make_os(5), 3, THIRD, "full"))


def test_cli_json(capsys):
    assert adeg_main(["--fn", "parity", "--n", "3", "--eps", "1/3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degree"] == 3 and out["N"] == 3 and out["eps"] == "1/3" and out["mode"] == "full"
    assert set(out) == {"fn", "n", "N", "eps", "mode", "degree", "certificate_hash", "backend"}
    assert adeg_main(["--fn", "os", "--n", "3", "--eps", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["degree"] == 3


def test_cli_reports_caps(capsys):
    assert adeg_main(["--fn", "parity", "--n", "30", "--mode", "full"]) == 2
    assert "adeg:" in capsys.readouterr().err
