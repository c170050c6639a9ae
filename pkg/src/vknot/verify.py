"""Seed-driven batch checks of the invariant identities.

Every suite takes ``(trials, seed)`` and returns a :class:`SuiteResult`.
Trial ``i`` draws from ``random.Random(seed * 1_000_003 + i)`` so that a
failing trial can be replayed on its own.  A failure is recorded as a
small JSON-ready certificate: the diagram(s), the events or marks
involved, and the polynomials that disagree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable

import numpy as np

from . import families
from .gauss import (
    LongDiagram, closure, crossing_change, descending, mirror, parse_long, product,
    reverse, switch_all,
)
from .invariants import (
    KINDS, SLOTS, closed_invariants, closure_predictions, derivative_checks, full_report,
)
from .laurent import ZERO, LaurentPoly
from .moves import (
    MarkedDiagram, alternating_sum, alternating_sums, degree_two_witness, random_diagram,
    random_marked, random_walk,
)
from .surface import build_carter, genus, pairing_tables

SCHEMA = "vknot.verify/1"

TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
FIGURE_EIGHT = "O1- U2- O3+ U4+ O2- U1- O4+ U3+"


@dataclass
class SuiteResult:
    suite: str
    trials: int
    seed: int
    checked: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "checked": self.checked,
            "passed": self.passed,
            "failures": self.failures,
            "info": self.info,
        }


def _trial_rng(seed: int, i: int) -> random.Random:
    return random.Random(seed * 1_000_003 + i)


def _diff(expected: dict, actual: dict) -> dict | None:
    bad = [k for k in expected if expected[k] != actual[k]]
    if not bad:
        return None
    return {
        "expected": {k: expected[k].to_text() for k in bad},
        "actual": {k: actual[k].to_text() for k in bad},
    }


def _fail(res: SuiteResult, check: str, mismatch: dict, **context):
    res.failures.append({"check": check, **context, **mismatch})


def _inv(p: LaurentPoly) -> LaurentPoly:
    return p.invert_var()


# moves ------------------------------------------------------------------------

def suite_moves(trials: int, seed: int, max_chords: int = 12, steps: int = 20,
                on_report: Callable | None = None) -> SuiteResult:
    """Random diagrams pushed through random sound move walks.

    ``on_report(diagram, report)`` sees every report computed on the way.
    """
    res = SuiteResult("moves", trials, seed)
    counts: dict[str, int] = {}

    def report(D):
        rep = full_report(D)
        if on_report is not None:
            on_report(D, rep)
        return rep.polynomials()

    for i in range(trials):
        rng = _trial_rng(seed, i)
        D = random_diagram(rng.randint(0, max_chords), rng)
        ref = report(D)
        events = []
        for ev, D2 in random_walk(D, steps, rng):
            events.append(ev.to_dict())
            counts[ev.kind] = counts.get(ev.kind, 0) + 1
            res.checked += 1
            mismatch = _diff(ref, report(D2))
            if mismatch:
                _fail(res, "move invariance", mismatch, trial=i, code=D.to_code(),
                      events=events, result=D2.to_code())
                break
    res.info["moves_applied"] = dict(sorted(counts.items()))
    return res


# symmetry ---------------------------------------------------------------------

def _flip_slot(s: str) -> str:
    return "".join("1" if c == "0" else "0" for c in s)


def symmetry_expectations(D: LongDiagram) -> list[tuple[str, LongDiagram, Callable]]:
    """(name, transformed diagram, map from D's polynomials to predicted ones)."""
    def sharp_or_reverse(sign):
        def pred(p):
            out = {"W0": p["W1"] * sign, "W1": p["W0"] * sign}
            for k in KINDS:
                for s in SLOTS:
                    out[f"{k}{s}"] = p[f"{k}{_flip_slot(s)}"]
            return out
        return pred

    def star(p):
        out = {"W0": -_inv(p["W0"]), "W1": -_inv(p["W1"])}
        for k in KINDS:
            for s in SLOTS:
                out[f"{k}{s}"] = _inv(p[f"{k}{s}"])
        return out

    return [
        ("switch", switch_all(D), sharp_or_reverse(-1)),
        ("reverse", reverse(D), sharp_or_reverse(1)),
        ("mirror", mirror(D), star),
    ]


def writhe_distinctness(n: int) -> bool:
    """The eight polynomials +-W_a(K'(n); t^{+-1}) are pairwise distinct."""
    rep = full_report(families.kprime(n))
    polys = [sgn * q for p in (rep.W[0], rep.W[1]) for q in (p, _inv(p)) for sgn in (1, -1)]
    return len(set(polys)) == 8


def suite_symmetry(trials: int, seed: int, max_chords: int = 12) -> SuiteResult:
    res = SuiteResult("symmetry", trials, seed)
    for i in range(trials):
        rng = _trial_rng(seed, i)
        D = random_diagram(rng.randint(0, max_chords), rng)
        base = full_report(D).polynomials()
        for name, D2, predict in symmetry_expectations(D):
            res.checked += 1
            actual = full_report(D2).polynomials()
            expected = predict(base)
            mismatch = _diff(expected, {k: actual[k] for k in expected})
            if mismatch:
                _fail(res, f"symmetry under {name}", mismatch, trial=i, code=D.to_code())
    distinct = {n: writhe_distinctness(n) for n in range(2, 9)}
    res.info["writhe_distinct"] = {str(n): ok for n, ok in distinct.items()}
    for n, ok in distinct.items():
        res.checked += 1
        if not ok:
            res.failures.append({"check": "writhe distinctness", "family": "Kprime", "n": n})
    return res


# product ----------------------------------------------------------------------

def product_prediction(p1: dict, p2: dict) -> dict:
    out = {f"W{a}": p1[f"W{a}"] + p2[f"W{a}"] for a in (0, 1)}
    for k in KINDS:
        for s in SLOTS:
            out[f"{k}{s}"] = p1[f"{k}{s}"] + p2[f"{k}{s}"]
    for s in SLOTS:
        a, b = s
        out[f"H{s}"] = (out[f"H{s}"] + _inv(p1[f"W{a}"]) * p2[f"W{b}"]
                        + _inv(p2[f"W{a}"]) * p1[f"W{b}"])
    return out


def product_blocks_ok(D1: LongDiagram, D2: LongDiagram) -> bool:
    """Pairing tables of D1 D2 in terms of those of D1 and D2."""
    T1, T2, T = pairing_tables(D1), pairing_tables(D2), pairing_tables(product(D1, D2))
    n1 = len(T1.labels)
    v1, v2 = T1.v, T2.v
    n2 = len(v2)
    zero = np.zeros((n1, n2), dtype=np.int64)
    A = np.block([[T1.A, zero], [zero.T, T2.A]])
    B = np.block([[T1.B, np.repeat(v1[:, None], n2, axis=1)],
                  [np.repeat(v2[:, None], n1, axis=1), T2.B]])
    C = np.block([[T1.C, -v1[:, None] + v2[None, :]],
                  [-v2[:, None] + v1[None, :], T2.C]])
    v = np.concatenate([v1, v2])
    return (np.array_equal(T.A, A) and np.array_equal(T.B, B)
            and np.array_equal(T.C, C) and np.array_equal(T.v, v))


def suite_product(trials: int, seed: int, max_chords: int = 8) -> SuiteResult:
    res = SuiteResult("product", trials, seed)
    for i in range(trials):
        rng = _trial_rng(seed, i)
        D1 = random_diagram(rng.randint(0, max_chords), rng)
        D2 = random_diagram(rng.randint(0, max_chords), rng)
        res.checked += 1
        expected = product_prediction(full_report(D1).polynomials(), full_report(D2).polynomials())
        actual = full_report(product(D1, D2)).polynomials()
        mismatch = _diff(expected, {k: actual[k] for k in expected})
        ctx = dict(trial=i, left=D1.to_code(), right=D2.to_code())
        if mismatch:
            _fail(res, "product formula", mismatch, **ctx)
        if not product_blocks_ok(D1, D2):
            res.failures.append({"check": "product table blocks", **ctx})
    return res


# crossing changes -------------------------------------------------------------

def descending_prediction(p: dict) -> dict:
    out = {"W0": p["W0"] - p["W1"], "W1": ZERO}
    for k in KINDS:
        for s in SLOTS:
            out[f"{k}{s}"] = ZERO
        out[f"{k}00"] = p[f"{k}00"] - p[f"{k}01"] - p[f"{k}10"] + p[f"{k}11"]
    return out


def suite_crossing_change(trials: int, seed: int, max_chords: int = 12) -> SuiteResult:
    res = SuiteResult("crossing-change", trials, seed)
    tildes = ("tW", "tF", "tG", "tH")
    for i in range(trials):
        rng = _trial_rng(seed, i)
        D = random_diagram(rng.randint(1, max_chords), rng)
        lab = rng.choice(D.labels)
        p = full_report(D).polynomials()
        q = full_report(crossing_change(D, lab)).polynomials()
        res.checked += 1
        mismatch = _diff({k: p[k] for k in tildes}, {k: q[k] for k in tildes})
        if mismatch:
            _fail(res, "crossing change", mismatch, trial=i, code=D.to_code(), chord=lab)
        expected = descending_prediction(p)
        d = full_report(descending(D)).polynomials()
        mismatch = _diff(expected, {k: d[k] for k in expected})
        if mismatch:
            _fail(res, "descending map", mismatch, trial=i, code=D.to_code())
    return res


# finite type ------------------------------------------------------------------

PRINTED_F = LaurentPoly({1: 1, 0: -2, -1: 1})
PRINTED_GH = -PRINTED_F


def suite_finite_type(trials: int, seed: int) -> SuiteResult:
    """Degree-one vanishing of W_a, degree-two vanishing of X_ab, witnesses."""
    res = SuiteResult("finite-type", trials, seed)
    xnames = [f"{k}{s}" for k in KINDS for s in SLOTS]
    for i in range(trials):
        rng = _trial_rng(seed, i)
        M2 = random_marked(rng.randint(2, 8), 2, rng)
        res.checked += 1
        sums = alternating_sums(M2, ["W0", "W1"])
        bad = {k: v for k, v in sums.items() if not v.is_zero()}
        if bad:
            _fail(res, "degree one", {"expected": {k: "0" for k in bad},
                                      "actual": {k: v.to_text() for k, v in bad.items()}},
                  trial=i, **M2.to_dict())
        M3 = random_marked(rng.randint(3, 7), 3, rng)
        res.checked += 1
        sums = alternating_sums(M3, xnames)
        bad = {k: v for k, v in sums.items() if not v.is_zero()}
        if bad:
            _fail(res, "degree two", {"expected": {k: "0" for k in bad},
                                      "actual": {k: v.to_text() for k, v in bad.items()}},
                  trial=i, **M3.to_dict())
    witnesses = {}
    printed = {"F": PRINTED_F, "G": PRINTED_GH, "H": PRINTED_GH}
    for s in SLOTS:
        w = degree_two_witness(slot=s)
        witnesses[s] = w.to_dict()
        res.checked += 1
        for k in KINDS:
            direct = alternating_sum(w.marked, f"{k}{s}")
            if direct != w.sums[k] or direct != printed[k]:
                _fail(res, "degree-two witness",
                      {"expected": {f"{k}{s}": printed[k].to_text()},
                       "actual": {f"{k}{s}": direct.to_text()}}, **w.marked.to_dict())
    res.info["witnesses"] = witnesses
    return res


# virtualization ---------------------------------------------------------------

def virtualization_sum(name: str, n: int, slot: str) -> LaurentPoly:
    """Alternating sum over virtualizing chords 1..n-2 of the family diagram."""
    M = MarkedDiagram(families.family(name, n), tuple(range(1, n - 1)), "virtualization")
    return alternating_sum(M, slot)


def virtualization_prediction(name: str, n: int, slot: str) -> LaurentPoly:
    """sum_s (-1)^(n-2-s) C(n-2, s) X(family(s+2))."""
    total = ZERO
    for s in range(n - 1):
        total = total + families.closed_forms(name, s + 2).get(slot, ZERO) * (
            (-1) ** (n - 2 - s) * comb(n - 2, s))
    return total


VIRTUALIZATION_DEGREES = {
    "K": {"W0": 0, "F00": -1, "G00": 0, "H00": 0},
    "Kprime": {"F01": -1, "G01": 0, "H10": 0},
}


def suite_virtualization(trials: int = 0, seed: int = 0, top: int = 8) -> SuiteResult:
    """Deterministic: growth of the maximal degree along the families."""
    res = SuiteResult("virtualization", trials, seed)
    table = {}
    for n in range(4, top + 1):
        for name, slots in VIRTUALIZATION_DEGREES.items():
            for slot, offset in slots.items():
                res.checked += 1
                got = virtualization_sum(name, n, slot)
                want = virtualization_prediction(name, n, slot)
                table[f"{name}({n}) {slot}"] = got.to_text()
                ctx = dict(family=name, n=n, slot=slot)
                if got != want:
                    _fail(res, "virtualization sum",
                          {"expected": {slot: want.to_text()}, "actual": {slot: got.to_text()}},
                          **ctx)
                if got.is_zero() or got.max_degree() != n + offset:
                    res.failures.append({"check": "virtualization degree",
                                         "expected_degree": n + offset,
                                         "actual": got.to_text(), **ctx})
    res.info["sums"] = table
    return res


# closure ----------------------------------------------------------------------

def suite_closure(trials: int, seed: int, max_chords: int = 12) -> SuiteResult:
    res = SuiteResult("closure", trials, seed)
    for i in range(trials):
        rng = _trial_rng(seed, i)
        D = random_diagram(rng.randint(0, max_chords), rng)
        pred = closure_predictions(full_report(D))
        got = closed_invariants(closure(D))
        res.checked += 1
        expected = {"W": pred.W, "I": pred.I, "II": pred.II}
        actual = {"W": got.W, "I": got.I, "II": got.II}
        mismatch = _diff(expected, actual)
        if mismatch:
            _fail(res, "closure", mismatch, trial=i, code=D.to_code())
    return res


# derivatives ------------------------------------------------------------------

def suite_derivatives(trials: int, seed: int, max_chords: int = 12) -> SuiteResult:
    res = SuiteResult("derivatives", trials, seed)
    for i in range(trials):
        rng = _trial_rng(seed, i)
        D = random_diagram(rng.randint(0, max_chords), rng)
        checks = derivative_checks(full_report(D))
        res.checked += 1
        if not checks.all():
            res.failures.append({"check": "derivative identities", "trial": i,
                                 "code": D.to_code(), "results": checks.as_dict()})
    return res


# classical --------------------------------------------------------------------

def suite_classical(trials: int = 0, seed: int = 0) -> SuiteResult:
    """Long trefoil and figure-eight: planar and all-zero."""
    res = SuiteResult("classical", trials, seed)
    for name, code in (("trefoil", TREFOIL), ("figure-eight", FIGURE_EIGHT)):
        D = parse_long(code)
        res.checked += 1
        g = genus(build_carter(D))
        polys = full_report(D).polynomials()
        nonzero = {k: p.to_text() for k, p in polys.items() if not p.is_zero()}
        if g != 0 or nonzero:
            res.failures.append({"check": "classical", "knot": name, "code": code,
                                 "genus": g, "nonzero": nonzero})
    return res


SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "moves": suite_moves,
    "symmetry": suite_symmetry,
    "product": suite_product,
    "crossing-change": suite_crossing_change,
    "finite-type": suite_finite_type,
    "virtualization": suite_virtualization,
    "closure": suite_closure,
    "derivatives": suite_derivatives,
    "classical": suite_classical,
}

DEFAULT_TRIALS = {
    "moves": 100, "symmetry": 100, "product": 100, "crossing-change": 100,
    "finite-type": 50, "virtualization": 0, "closure": 100, "derivatives": 100,
    "classical": 0,
}


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if trials is None:
        trials = DEFAULT_TRIALS[name]
    if trials < 0:
        raise ValueError("trials must be non-negative")
    return SUITES[name](trials, seed)
