"""Writhe and intersection polynomials of long virtual knots, plus the
writhe / first / second intersection polynomials of closed virtual knots.

All polynomials are computed on the given diagram with the writhe
correction terms; no untwisting happens here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian

import numpy as np

from .gauss import ClosedDiagram, LongDiagram, crossing_type, writhe
from .laurent import ZERO, LaurentPoly
from .surface import build_carter, closed_cycles, pairing_tables, walks_pair_matrix

SLOTS = ("00", "01", "10", "11")
KINDS = ("F", "G", "H")
SCHEMA = "vknot.report/1"


def _signed_sum(M: np.ndarray, ei: np.ndarray, ej: np.ndarray) -> LaurentPoly:
    """sum_ij ei[i] ej[j] (t^M[i,j] - 1)."""
    if M.size == 0:
        return ZERO
    w = np.outer(ei, ej).ravel()
    exps = M.ravel()
    keys, inv = np.unique(exps, return_inverse=True)
    coeffs = np.zeros(len(keys), dtype=np.int64)
    np.add.at(coeffs, inv.ravel(), w)
    terms = [(int(k), int(c)) for k, c in zip(keys, coeffs)]
    terms.append((0, -int(w.sum())))
    return LaurentPoly(terms)


class _Data:
    """Pairing tables plus type masks for one long diagram."""

    def __init__(self, D: LongDiagram):
        self.D = D
        self.tables = pairing_tables(D)
        labels = self.tables.labels
        self.eps = np.array([D.signs[lab] for lab in labels], dtype=np.int64)
        types = np.array([crossing_type(D, lab) for lab in labels], dtype=np.int64)
        self.idx = {a: np.flatnonzero(types == a) for a in (0, 1)}
        self.omega = {a: int(self.eps[self.idx[a]].sum()) for a in (0, 1)}

    def W(self, a: int) -> LaurentPoly:
        I = self.idx[a]
        diag = np.diag(self.tables.B)[I]
        return _signed_sum(diag[:, None], self.eps[I], np.ones(1, dtype=np.int64))

    def raw(self, kind: str, a: int, b: int) -> LaurentPoly:
        M = {"f": self.tables.A, "g": self.tables.B, "h": self.tables.C}[kind]
        I, J = self.idx[a], self.idx[b]
        return _signed_sum(M[np.ix_(I, J)], self.eps[I], self.eps[J])

    def X(self, kind: str, a: int, b: int) -> LaurentPoly:
        if kind == "F":
            return self.raw("f", a, b)
        if kind == "G":
            return self.raw("g", a, b) - self.W(a) * self.omega[b]
        if kind == "H":
            return (self.raw("h", a, b) - self.W(b) * self.omega[a]
                    - self.W(a).invert_var() * self.omega[b])
        raise ValueError(f"unknown polynomial kind {kind!r}")


def _check_type(a):
    if a not in (0, 1):
        raise ValueError("crossing type must be 0 or 1")


def writhe_polynomial(D: LongDiagram, a: int) -> LaurentPoly:
    """W_a(D; t) = sum over type-a crossings of eps_i (t^(alpha_i.beta_i) - 1)."""
    _check_type(a)
    return _Data(D).W(a)


def raw_sum(D: LongDiagram, kind: str, a: int, b: int) -> LaurentPoly:
    """The uncorrected double sum f_ab, g_ab or h_ab (diagram dependent)."""
    _check_type(a)
    _check_type(b)
    if kind not in ("f", "g", "h"):
        raise ValueError(f"unknown raw sum {kind!r}")
    return _Data(D).raw(kind, a, b)


def intersection_polynomial(D: LongDiagram, X: str, a: int, b: int) -> LaurentPoly:
    _check_type(a)
    _check_type(b)
    return _Data(D).X(X, a, b)


def _tilde(get) -> LaurentPoly:
    return get(0, 0) - get(0, 1) - get(1, 0) + get(1, 1)


def tilde_invariants(D: LongDiagram):
    """(W~, F~, G~, H~), unchanged by crossing changes."""
    d = _Data(D)
    return (
        d.W(0) - d.W(1),
        _tilde(lambda a, b: d.X("F", a, b)),
        _tilde(lambda a, b: d.X("G", a, b)),
        _tilde(lambda a, b: d.X("H", a, b)),
    )


# closed knots ---------------------------------------------------------------

@dataclass(frozen=True)
class ClosedInvariants:
    W: LaurentPoly
    I: LaurentPoly
    II: LaurentPoly


def _closed(Delta: ClosedDiagram) -> ClosedInvariants:
    R = build_carter(Delta)
    labels = Delta.labels
    if not labels:
        return ClosedInvariants(ZERO, ZERO, ZERO)
    gam, gbar = zip(*(closed_cycles(Delta, lab, R) for lab in labels))
    eps = np.array([Delta.signs[lab] for lab in labels], dtype=np.int64)
    G_Gb = walks_pair_matrix(list(gam), list(gbar))
    G_G = walks_pair_matrix(list(gam), list(gam))
    Gb_Gb = walks_pair_matrix(list(gbar), list(gbar))
    one = np.ones(1, dtype=np.int64)
    W = _signed_sum(np.diag(G_Gb)[:, None], eps, one)
    w = int(eps.sum())
    I = _signed_sum(G_Gb, eps, eps) - W * w
    II = _signed_sum(G_G, eps, eps) + _signed_sum(Gb_Gb, eps, eps) - (W + W.invert_var()) * w
    return ClosedInvariants(W, I, II)


def closed_writhe_polynomial(Delta: ClosedDiagram) -> LaurentPoly:
    return _closed(Delta).W


def closed_first(Delta: ClosedDiagram) -> LaurentPoly:
    return _closed(Delta).I


def closed_second(Delta: ClosedDiagram) -> LaurentPoly:
    return _closed(Delta).II


def closed_invariants(Delta: ClosedDiagram) -> ClosedInvariants:
    return _closed(Delta)


# reports --------------------------------------------------------------------

@dataclass(frozen=True)
class DerivativeChecks:
    w_prime_equal: bool
    g_diagonal_vanish: bool
    g_offdiagonal_cancel: bool
    f_h_prime_equal: bool
    second_mod_four: bool

    def all(self) -> bool:
        return all(vars(self).values())

    def as_dict(self) -> dict:
        return dict(vars(self))


@dataclass(frozen=True)
class InvariantReport:
    W: dict[int, LaurentPoly]
    F: dict[str, LaurentPoly]
    G: dict[str, LaurentPoly]
    H: dict[str, LaurentPoly]
    tilde_W: LaurentPoly
    tilde_F: LaurentPoly
    tilde_G: LaurentPoly
    tilde_H: LaurentPoly
    omega: dict[int, int] = field(compare=False)

    def X(self, kind: str, a: int, b: int) -> LaurentPoly:
        return getattr(self, kind)[f"{a}{b}"]

    def polynomials(self) -> dict[str, LaurentPoly]:
        """Fixed slot order: W0, W1, F00..F11, G00..G11, H00..H11, tildes."""
        out = {"W0": self.W[0], "W1": self.W[1]}
        for kind in KINDS:
            for s in SLOTS:
                out[f"{kind}{s}"] = getattr(self, kind)[s]
        out.update(tW=self.tilde_W, tF=self.tilde_F, tG=self.tilde_G, tH=self.tilde_H)
        return out

    def invariant_key(self) -> tuple:
        return tuple(self.polynomials().values())

    def verify(self):
        polys = self.polynomials()
        for name, p in polys.items():
            if p(1) != 0:
                raise RuntimeError(f"{name} does not vanish at t=1")
        for kind in ("F", "H"):
            d = getattr(self, kind)
            for s in ("00", "11"):
                if not d[s].is_reciprocal():
                    raise RuntimeError(f"{kind}{s} is not reciprocal")
            if d["01"] != d["10"].invert_var():
                raise RuntimeError(f"{kind}01(t) != {kind}10(1/t)")

    def to_dict(self) -> dict:
        return {
            "omega": {str(a): self.omega[a] for a in (0, 1)},
            "polynomials": {k: p.to_text() for k, p in self.polynomials().items()},
        }


def full_report(D: LongDiagram) -> InvariantReport:
    d = _Data(D)
    X = {kind: {f"{a}{b}": d.X(kind, a, b) for a, b in _cartesian((0, 1), repeat=2)}
         for kind in KINDS}
    rep = InvariantReport(
        W={0: d.W(0), 1: d.W(1)},
        F=X["F"], G=X["G"], H=X["H"],
        tilde_W=d.W(0) - d.W(1),
        tilde_F=_tilde(lambda a, b: X["F"][f"{a}{b}"]),
        tilde_G=_tilde(lambda a, b: X["G"][f"{a}{b}"]),
        tilde_H=_tilde(lambda a, b: X["H"][f"{a}{b}"]),
        omega=dict(d.omega),
    )
    rep.verify()
    return rep


def derivative_checks(rep: InvariantReport) -> DerivativeChecks:
    def d1(p):
        return p.derivative_at_one(1)

    def d2(p):
        return p.derivative_at_one(2)

    F, G, H = rep.F, rep.G, rep.H
    return DerivativeChecks(
        w_prime_equal=d1(rep.W[0]) == d1(rep.W[1]),
        g_diagonal_vanish=d1(G["00"]) == 0 and d1(G["11"]) == 0,
        g_offdiagonal_cancel=d1(G["01"]) + d1(G["10"]) == 0,
        f_h_prime_equal=d1(F["01"]) == d1(H["01"]) and d1(F["10"]) == d1(H["10"]),
        second_mod_four=(d2(F["00"]) + d2(F["11"]) + d2(H["00"]) + d2(H["11"])) % 4 == 0,
    )


def check_derivative_identities(D: LongDiagram) -> DerivativeChecks:
    return derivative_checks(full_report(D))


def closure_predictions(rep: InvariantReport) -> ClosedInvariants:
    """W, I, II of the closure expressed through the long invariants."""
    F, G, H, W = rep.F, rep.G, rep.H, rep.W
    inv = LaurentPoly.invert_var
    return ClosedInvariants(
        W=W[0] + inv(W[1]),
        I=F["01"] + G["00"] + inv(G["11"]) + inv(H["01"]),
        II=(F["00"] + F["11"] + G["01"] + inv(G["01"]) + G["10"] + inv(G["10"])
            + H["00"] + H["11"]),
    )


def report_document(D: LongDiagram) -> dict:
    """JSON-ready document: long invariants, closure invariants, derivative checks."""
    from .gauss import closure

    rep = full_report(D)
    closed = closed_invariants(closure(D))
    return {
        "schema": SCHEMA,
        "code": D.to_code(),
        "omega": rep.to_dict()["omega"],
        "polynomials": rep.to_dict()["polynomials"],
        "closure": {"W": closed.W.to_text(), "I": closed.I.to_text(), "II": closed.II.to_text()},
        "derivative_checks": derivative_checks(rep).as_dict(),
    }


def render_latex(rep: InvariantReport) -> str:
    lines = [r"\begin{align*}"]
    for a in (0, 1):
        lines.append(f"W_{{{a}}}(K;t) &= {rep.W[a].to_latex()}\\\\")
    for kind in KINDS:
        for s in SLOTS:
            lines.append(f"{kind}_{{{s}}}(K;t) &= {getattr(rep, kind)[s].to_latex()}\\\\")
    lines[-1] = lines[-1].rstrip("\\")
    lines.append(r"\end{align*}")
    return "\n".join(lines)


def render_text(rep: InvariantReport) -> str:
    rows = [f"omega0 = {rep.omega[0]}", f"omega1 = {rep.omega[1]}"]
    rows += [f"{k} = {p.to_text()}" for k, p in rep.polynomials().items()]
    return "\n".join(rows)
