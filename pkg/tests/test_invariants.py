from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from vknot.families import k_closed_forms, k_family, kprime, kprime_closed_forms
from vknot.gauss import (
    closure, crossing_change, crossing_type, descending, parse_closed, parse_long, product,
    untwist, writhe,
)
from vknot.invariants import (
    closed_invariants, closure_predictions, derivative_checks, full_report,
    intersection_polynomial, raw_sum, render_latex, report_document, tilde_invariants,
    writhe_polynomial,
)
from vknot.laurent import ZERO, LaurentPoly, parse_poly
from vknot.surface import cross_check_tables
from vknot.verify import (
    FIGURE_EIGHT, TREFOIL, descending_prediction, product_prediction, symmetry_expectations,
)

from conftest import diagrams


def _naive(D):
    """Invariants by plain loops over the homology-basis tables."""
    T = cross_check_tables(D)
    labels = list(T.labels)
    idx = {lab: k for k, lab in enumerate(labels)}
    typ = {lab: crossing_type(D, lab) for lab in labels}
    eps = D.signs
    t = lambda k: LaurentPoly({int(k): 1}) - 1

    def W(a):
        return sum((t(T.B[idx[i], idx[i]]) * eps[i] for i in labels if typ[i] == a), ZERO)

    def raw(M, a, b):
        total = ZERO
        for i in labels:
            for j in labels:
                if typ[i] == a and typ[j] == b:
                    total = total + t(M[idx[i], idx[j]]) * (eps[i] * eps[j])
        return total

    w = {a: writhe(D, a) for a in (0, 1)}
    out = {"W0": W(0), "W1": W(1)}
    for a in (0, 1):
        for b in (0, 1):
            out[f"F{a}{b}"] = raw(T.A, a, b)
            out[f"G{a}{b}"] = raw(T.B, a, b) - W(a) * w[b]
            out[f"H{a}{b}"] = raw(T.C, a, b) - W(b) * w[a] - W(a).invert_var() * w[b]
    return out


def _polys(D):
    return full_report(D).polynomials()


def test_two_chord_example():
    D = parse_long("O1+ O2+ U1+ U2+")
    assert writhe_polynomial(D, 0) == parse_poly("t - 2 + t^-1")
    assert writhe_polynomial(D, 1) == ZERO


@pytest.mark.parametrize("n", range(2, 9))
def test_k_family(n):
    p = _polys(k_family(n))
    gold = k_closed_forms(n)
    assert p["W0"] == parse_poly(f"t^{n} - {n}*t + {n - 1}")
    for slot in [k for k in p if not k.startswith("t")]:
        assert p[slot] == gold.get(slot, ZERO), slot


@pytest.mark.parametrize("n", range(2, 9))
def test_kprime_family(n):
    p = _polys(kprime(n))
    gold = kprime_closed_forms(n)
    for slot in [k for k in p if not k.startswith("t")]:
        assert p[slot] == gold.get(slot, ZERO), slot


def test_small_family_members_written_out():
    p = _polys(k_family(2))
    assert p["F00"] == parse_poly("-t + 2 - t^-1")
    assert p["G00"] == ZERO
    assert p["H00"] == parse_poly("t^2 + t^-2 - 3*t - 3*t^-1 + 4")
    q = _polys(kprime(2))
    expected = {
        "F01": "t - 1", "G01": "-t^2 + t", "G10": "t^2 - t", "H00": "-t^2 + 2 - t^-2",
        "H01": "-2*t^-2 + t^-1 + 3 - 2*t", "H11": "-4*t + 8 - 4*t^-1",
        "F00": "0", "F11": "0", "G00": "0", "G11": "0",
    }
    for slot, text in expected.items():
        assert q[slot] == parse_poly(text), slot


def test_raw_sum_examples():
    assert raw_sum(parse_long(""), "h", 0, 0) == ZERO
    assert raw_sum(parse_long("O1+ U1+"), "h", 0, 0) == ZERO
    with pytest.raises(ValueError):
        raw_sum(parse_long(""), "x", 0, 0)
    with pytest.raises(ValueError):
        intersection_polynomial(parse_long(""), "F", 2, 0)


@pytest.mark.parametrize("code", [TREFOIL, FIGURE_EIGHT])
def test_classical_codes_vanish(code):
    assert all(p.is_zero() for p in _polys(parse_long(code)).values())


def test_family_tildes_agree():
    for n in range(2, 7):
        assert tilde_invariants(k_family(n)) == tilde_invariants(kprime(n))
    assert tilde_invariants(k_family(2))[0] == parse_poly("t^2 - 2*t + 1")


def test_closed_examples():
    for code in ("", "O1+ U1+", "U1- O1-"):
        ci = closed_invariants(parse_closed(code))
        assert ci.W == ci.I == ci.II == ZERO
    assert closed_invariants(closure(kprime(2))).W == parse_poly("t^2 + 2*t^-1 - 3")


def test_derivative_examples():
    rep = full_report(kprime(2))
    assert rep.W[0].derivative_at_one(1) == 2 == rep.W[1].derivative_at_one(1)
    assert derivative_checks(full_report(k_family(2))).all()
    assert derivative_checks(full_report(parse_long(""))).all()


def test_report_document_and_latex():
    doc = report_document(parse_long(""))
    assert doc["schema"] == "vknot.report/1"
    assert set(doc["polynomials"].values()) == {"0"}
    assert list(doc["polynomials"])[:4] == ["W0", "W1", "F00", "F01"]
    tex = render_latex(full_report(k_family(3)))
    assert "W_{0}(K;t) &= t^{3}-3t+2" in tex


@given(diagrams())
def test_engine_matches_naive_loops(D):
    p, q = _polys(D), _naive(D)
    assert all(p[k] == q[k] for k in q)


@given(diagrams())
def test_report_invariants(D):
    rep = full_report(D)
    for p in rep.polynomials().values():
        assert p(1) == 0
    for X in (rep.F, rep.H):
        assert X["00"].is_reciprocal() and X["11"].is_reciprocal()
        assert X["01"] == X["10"].invert_var()


@given(diagrams())
def test_untwisted_raw_sums_are_the_invariants(D):
    U = untwist(D)
    assert full_report(U) == full_report(D)
    for a in (0, 1):
        for b in (0, 1):
            assert raw_sum(U, "g", a, b) == intersection_polynomial(U, "G", a, b)
            assert raw_sum(U, "h", a, b) == intersection_polynomial(U, "H", a, b)


@given(diagrams())
def test_symmetries(D):
    base = _polys(D)
    for name, D2, predict in symmetry_expectations(D):
        got = _polys(D2)
        want = predict(base)
        assert all(got[k] == want[k] for k in want), name


@given(diagrams(max_chords=5), diagrams(max_chords=5))
def test_product_formulas(D1, D2):
    got = _polys(product(D1, D2))
    want = product_prediction(_polys(D1), _polys(D2))
    assert all(got[k] == want[k] for k in want)


@given(diagrams(min_chords=1), st.data())
def test_crossing_change_keeps_tildes(D, data):
    lab = data.draw(st.sampled_from(D.labels))
    assert tilde_invariants(crossing_change(D, lab)) == tilde_invariants(D)


@given(diagrams())
def test_descending_map(D):
    got = _polys(descending(D))
    want = descending_prediction(_polys(D))
    assert all(got[k] == want[k] for k in want)


@given(diagrams())
def test_closure_relations(D):
    assert closed_invariants(closure(D)) == closure_predictions(full_report(D))


@given(diagrams())
def test_derivative_identities(D):
    assert derivative_checks(full_report(D)).all()
