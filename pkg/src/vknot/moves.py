"""Reidemeister moves on Gauss codes, random diagrams and walks, and
alternating sums over marked diagrams.

Virtual moves act trivially on Gauss codes and are not modelled.  R3 is
applied only to detected triangles that pass an admissibility test;
anything else is refused.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product as _cartesian
from typing import Callable

from .gauss import (
    OVER, UNDER, LongDiagram, closure, crossing_change, crossing_type, virtualize,
)
from .invariants import closed_invariants, full_report
from .laurent import ZERO, LaurentPoly


class MoveError(ValueError):
    """A move was requested at a place where it is not a sound move."""


@dataclass(frozen=True)
class MoveEvent:
    kind: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.params}


def _next_label(D: LongDiagram) -> int:
    return max(D.signs, default=0) + 1


def _insert(eps: list, slot: int, toks: list) -> list:
    return eps[:slot] + toks + eps[slot:]


# R1 -------------------------------------------------------------------------

def r1_insert(D: LongDiagram, position: int, sign: int, order: str = "O") -> LongDiagram:
    """Insert a kink at endpoint slot ``position``; ``order`` is the passage met
    first ("O" gives a type-0 crossing)."""
    m = len(D.endpoints)
    if not 0 <= position <= m:
        raise MoveError(f"slot {position} out of range 0..{m}")
    if sign not in (1, -1) or order not in (OVER, UNDER):
        raise MoveError("bad R1 parameters")
    lab = _next_label(D)
    second = UNDER if order == OVER else OVER
    eps = _insert(list(D.endpoints), position, [(lab, order), (lab, second)])
    signs = dict(D.signs)
    signs[lab] = sign
    return LongDiagram(tuple(eps), signs)


def r1_sites(D: LongDiagram) -> list[int]:
    """Chords whose two passages are adjacent (removable kinks)."""
    return [lab for lab in D.labels if abs(D.positions(lab)[0] - D.positions(lab)[1]) == 1]


def r1_delete(D: LongDiagram, label: int) -> LongDiagram:
    if label not in r1_sites(D):
        raise MoveError(f"chord {label} is not a kink")
    return virtualize(D, label)


# R2 -------------------------------------------------------------------------

def r2_insert(D: LongDiagram, position1: int, position2: int, variant: str = "parallel",
              over_strand: str = "first", sign: int = 1) -> LongDiagram:
    """Push one strand across another, creating two crossings.

    The first strand gets its two passages at slot ``position1`` and the
    second at ``position2`` (slots index the original code; with equal
    slots the first strand's pair comes first).  ``variant`` says whether
    the second strand meets the new crossings in the same or the reverse
    order.
    """
    m = len(D.endpoints)
    if not (0 <= position1 <= position2 <= m):
        raise MoveError(f"need 0 <= position1 <= position2 <= {m}")
    if variant not in ("parallel", "antiparallel") or over_strand not in ("first", "second"):
        raise MoveError("bad R2 parameters")
    if sign not in (1, -1):
        raise MoveError("sign must be +1 or -1")
    a = _next_label(D)
    b = a + 1
    p1 = OVER if over_strand == "first" else UNDER
    p2 = UNDER if p1 == OVER else OVER
    strand1 = [(a, p1), (b, p1)]
    strand2 = [(a, p2), (b, p2)] if variant == "parallel" else [(b, p2), (a, p2)]
    eps = list(D.endpoints)
    eps = eps[:position1] + strand1 + eps[position1:position2] + strand2 + eps[position2:]
    signs = dict(D.signs)
    signs[a], signs[b] = sign, -sign
    return LongDiagram(tuple(eps), signs)


def r2_pairs(D: LongDiagram) -> list[tuple[int, int]]:
    """Chord pairs forming a removable bigon."""
    out = []
    eps = D.endpoints
    for k in range(len(eps) - 1):
        (x, px), (y, py) = eps[k], eps[k + 1]
        if x == y or px != py or D.signs[x] != -D.signs[y]:
            continue
        ox = D.positions(x)[1 if px == OVER else 0]
        oy = D.positions(y)[1 if py == OVER else 0]
        if abs(ox - oy) != 1:
            continue
        # report each bigon once, from its earlier strand
        if k < min(ox, oy):
            out.append((x, y))
    return out


def r2_delete(D: LongDiagram, a: int, b: int) -> LongDiagram:
    if (a, b) not in r2_pairs(D) and (b, a) not in r2_pairs(D):
        raise MoveError(f"chords {a}, {b} do not form a bigon")
    return virtualize(virtualize(D, a), b)


# R3 -------------------------------------------------------------------------

@dataclass(frozen=True)
class Triangle:
    chords: tuple[int, int, int]
    windows: tuple[int, int, int]   # start index of each adjacent token pair


def _triangle_ok(D: LongDiagram, windows) -> bool:
    eps = D.endpoints
    strands = [(eps[k], eps[k + 1]) for k in windows]
    overs = sorted(sum(p == OVER for _, p in s) for s in strands)
    if overs != [0, 1, 2]:
        return False
    labels = [{s[0][0], s[1][0]} for s in strands]
    shared = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        common = labels[i] & labels[j]
        if len(common) != 1:
            return False
        shared[i, j] = common.pop()
    if len(set(shared.values())) != 3:
        return False

    def eta(i, j):
        x = shared[i, j]
        on_i = next(p for lab, p in strands[i] if lab == x)
        return D.signs[x] if on_i == OVER else -D.signs[x]

    ref = {0: shared[0, 1], 1: shared[0, 1], 2: shared[0, 2]}
    s = {i: 1 if strands[i][0][0] == ref[i] else -1 for i in range(3)}
    vals = {eta(0, 1) * s[0] * s[1], eta(0, 2) * s[0] * s[2], eta(1, 2) * s[1] * s[2]}
    return len(vals) == 1


def r3_triangles(D: LongDiagram) -> list[Triangle]:
    eps = D.endpoints
    windows: dict[frozenset, list[int]] = {}
    for k in range(len(eps) - 1):
        x, y = eps[k][0], eps[k + 1][0]
        if x != y:
            windows.setdefault(frozenset((x, y)), []).append(k)
    found = []
    for ab, ks in windows.items():
        a, b = sorted(ab)
        for c in D.labels:
            if c <= b:
                continue
            for k1 in ks:
                for k2 in windows.get(frozenset((a, c)), []):
                    for k3 in windows.get(frozenset((b, c)), []):
                        used = {k1, k1 + 1, k2, k2 + 1, k3, k3 + 1}
                        if len(used) == 6 and _triangle_ok(D, (k1, k2, k3)):
                            found.append(Triangle((a, b, c), tuple(sorted((k1, k2, k3)))))
    return found


def r3_apply(D: LongDiagram, triangle) -> LongDiagram:
    """Slide one strand across the crossing of the other two.

    ``triangle`` is a :class:`Triangle` or a triple of chord labels.
    """
    if not isinstance(triangle, Triangle):
        want = tuple(sorted(triangle))
        matches = [t for t in r3_triangles(D) if t.chords == want]
        if not matches:
            raise MoveError(f"chords {want} do not form an admissible R3 triangle")
        triangle = matches[0]
    if not _triangle_ok(D, triangle.windows):
        raise MoveError("inadmissible R3 triangle")
    eps = list(D.endpoints)
    for k in triangle.windows:
        eps[k], eps[k + 1] = eps[k + 1], eps[k]
    return LongDiagram(tuple(eps), D.signs)


def r3_swap_unchecked(D: LongDiagram, windows) -> LongDiagram:
    """Token swap without the admissibility test (for negative tests only)."""
    eps = list(D.endpoints)
    for k in windows:
        eps[k], eps[k + 1] = eps[k + 1], eps[k]
    return LongDiagram(tuple(eps), D.signs)


# random generation ----------------------------------------------------------

def random_diagram(chords: int, seed) -> LongDiagram:
    """Uniform random interleaving of ``chords`` chords with fair signs and
    fair O/U order, labelled canonically."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    seq = [lab for lab in range(1, chords + 1) for _ in range(2)]
    rng.shuffle(seq)
    over_first = {lab: rng.random() < 0.5 for lab in range(1, chords + 1)}
    signs = {lab: rng.choice((1, -1)) for lab in range(1, chords + 1)}
    seen, eps = set(), []
    for lab in seq:
        first = lab not in seen
        seen.add(lab)
        eps.append((lab, OVER if first == over_first[lab] else UNDER))
    return LongDiagram(tuple(eps), signs).canonical()


def random_move(D: LongDiagram, rng: random.Random, max_chords: int = 30):
    """One random sound move; returns (event, new diagram)."""
    m = len(D.endpoints)
    options = []
    if len(D) + 1 <= max_chords:
        options.append("R1_insert")
    if len(D) + 2 <= max_chords:
        options.append("R2_insert")
    kinks, bigons, tris = r1_sites(D), r2_pairs(D), r3_triangles(D)
    if kinks:
        options.append("R1_delete")
    if bigons:
        options.append("R2_delete")
    if tris:
        options += ["R3", "R3"]
    kind = rng.choice(options)
    if kind == "R1_insert":
        params = dict(position=rng.randint(0, m), sign=rng.choice((1, -1)),
                      order=rng.choice((OVER, UNDER)))
        return MoveEvent(kind, params), r1_insert(D, **params)
    if kind == "R2_insert":
        p1, p2 = sorted((rng.randint(0, m), rng.randint(0, m)))
        params = dict(position1=p1, position2=p2,
                      variant=rng.choice(("parallel", "antiparallel")),
                      over_strand=rng.choice(("first", "second")),
                      sign=rng.choice((1, -1)))
        return MoveEvent(kind, params), r2_insert(D, **params)
    if kind == "R1_delete":
        lab = rng.choice(kinks)
        return MoveEvent(kind, {"label": lab}), r1_delete(D, lab)
    if kind == "R2_delete":
        a, b = rng.choice(bigons)
        return MoveEvent(kind, {"labels": [a, b]}), r2_delete(D, a, b)
    tri = rng.choice(tris)
    return (MoveEvent("R3", {"chords": list(tri.chords), "windows": list(tri.windows)}),
            r3_apply(D, tri))


def random_walk(D: LongDiagram, steps: int, seed, max_chords: int = 30):
    """``steps`` random sound moves from D; list of (event, diagram)."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    out = []
    for _ in range(steps):
        ev, D = random_move(D, rng, max_chords)
        out.append((ev, D))
    return out


# marked diagrams ------------------------------------------------------------

RULES = ("crossing_change", "virtualization")


@dataclass(frozen=True)
class MarkedDiagram:
    base: LongDiagram
    marks: tuple[int, ...]
    rule: str = "crossing_change"

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(self.marks))
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if len(set(self.marks)) != len(self.marks):
            raise ValueError("marks must be distinct")
        for lab in self.marks:
            if lab not in self.base.signs:
                raise ValueError(f"mark {lab} is not a chord of the base diagram")

    @property
    def k(self) -> int:
        return len(self.marks)

    def variant(self, delta) -> LongDiagram:
        D = self.base
        op = crossing_change if self.rule == "crossing_change" else virtualize
        for lab, d in zip(self.marks, delta, strict=True):
            if d:
                D = op(D, lab)
        return D

    def variants(self):
        for delta in _cartesian((0, 1), repeat=self.k):
            yield delta, self.variant(delta)

    def to_dict(self) -> dict:
        return {"base": self.base.to_code(), "marks": list(self.marks), "rule": self.rule}


def _report_selector(name: str) -> Callable[[LongDiagram], LaurentPoly]:
    return lambda D: full_report(D).polynomials()[name]


def _closed_selector(attr: str) -> Callable[[LongDiagram], LaurentPoly]:
    return lambda D: getattr(closed_invariants(closure(D)), attr)


SELECTORS: dict[str, Callable[[LongDiagram], LaurentPoly]] = {
    name: _report_selector(name)
    for name in ["W0", "W1", "tW", "tF", "tG", "tH"]
    + [f"{k}{a}{b}" for k in "FGH" for a in (0, 1) for b in (0, 1)]
}
SELECTORS.update(closedW=_closed_selector("W"), closedI=_closed_selector("I"),
                 closedII=_closed_selector("II"))


def alternating_sum(M: MarkedDiagram, invariant) -> LaurentPoly:
    """sum over delta in {0,1}^k of (-1)^|delta| v(D_delta)."""
    if isinstance(invariant, str):
        if invariant not in SELECTORS:
            raise KeyError(f"unknown invariant selector {invariant!r}")
        invariant = SELECTORS[invariant]
    total = ZERO
    for delta, D in M.variants():
        v = invariant(D)
        total = total - v if sum(delta) % 2 else total + v
    return total


def alternating_sums(M: MarkedDiagram, names) -> dict[str, LaurentPoly]:
    """Several report selectors at once, one report per variant."""
    totals = {name: ZERO for name in names}
    for delta, D in M.variants():
        polys = full_report(D).polynomials()
        sgn = -1 if sum(delta) % 2 else 1
        for name in names:
            totals[name] = totals[name] + polys[name] * sgn
    return totals


def random_marked(chords: int, k: int, rng: random.Random,
                  rule: str = "crossing_change") -> MarkedDiagram:
    D = random_diagram(chords, rng)
    marks = tuple(rng.sample(D.labels, k))
    return MarkedDiagram(D, marks, rule)


# degree witnesses -------------------------------------------------------------

def _canonical_patterns(n: int):
    """Chord interleavings of n chords, labels in first-appearance order."""
    def rec(seq, open_, nxt):
        if len(seq) == 2 * n:
            yield tuple(seq)
            return
        if nxt <= n:
            yield from rec(seq + [nxt], open_ | {nxt}, nxt + 1)
        for lab in sorted(open_):
            yield from rec(seq + [lab], open_ - {lab}, nxt)
    yield from rec([], frozenset(), 1)


def small_diagrams(max_chords: int):
    """Every long Gauss diagram with at most ``max_chords`` chords."""
    for n in range(max_chords + 1):
        for pattern in _canonical_patterns(n):
            for over_first in _cartesian((True, False), repeat=n):
                for sgns in _cartesian((1, -1), repeat=n):
                    seen, eps = set(), []
                    for lab in pattern:
                        first = lab not in seen
                        seen.add(lab)
                        eps.append((lab, OVER if first == over_first[lab - 1] else UNDER))
                    yield LongDiagram(tuple(eps), {i + 1: s for i, s in enumerate(sgns)})


@dataclass(frozen=True)
class Witness:
    marked: MarkedDiagram
    slot: str
    sums: dict

    def to_dict(self) -> dict:
        return {**self.marked.to_dict(), "slot": self.slot,
                "sums": {k: v.to_text() for k, v in self.sums.items()}}


def degree_two_witness(rule: str = "crossing_change", slot: str = "00",
                       max_chords: int = 4, target: dict | None = None) -> Witness:
    """Search small 2-marked diagrams for nonzero F/G/H alternating sums.

    With ``target`` (selector kind -> polynomial) the search continues
    until the sums equal the target; otherwise every F, G and H sum at
    ``slot`` must merely be nonzero.
    """
    names = [f"{k}{slot}" for k in "FGH"]
    for D in small_diagrams(max_chords):
        for marks in combinations(D.labels, 2):
            M = MarkedDiagram(D, marks, rule)
            sums = alternating_sums(M, names)
            by_kind = {name[0]: p for name, p in sums.items()}
            if target is not None:
                if all(by_kind[k] == p for k, p in target.items()):
                    return Witness(M, slot, by_kind)
            elif all(not p.is_zero() for p in by_kind.values()):
                return Witness(M, slot, by_kind)
    raise RuntimeError(f"no degree-two witness with at most {max_chords} chords")
