"""Gauss codes for long and closed virtual knot diagrams.

A diagram is the sequence of real-crossing passages met along the knot,
each passage tagged over (``O``) or under (``U``), plus a sign per
crossing.  Virtual crossings leave no trace in the code.

Text grammar, tokens separated by whitespace and/or commas::

    O<label><sign>  |  U<label><sign>      sign in {+, -}

Both tokens of a label must carry the same sign.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

OVER, UNDER = "O", "U"


class GaussCodeError(ValueError):
    """Malformed Gauss code; ``offset`` is the character offset, if known."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Chord:
    label: int
    over_pos: int
    under_pos: int
    sign: int

    def __post_init__(self):
        if self.over_pos == self.under_pos:
            raise GaussCodeError(f"chord {self.label}: over and under positions coincide")
        if self.sign not in (-1, 1):
            raise GaussCodeError(f"chord {self.label}: sign must be +1 or -1")

    @property
    def first(self) -> int:
        return min(self.over_pos, self.under_pos)

    @property
    def second(self) -> int:
        return max(self.over_pos, self.under_pos)


def _flip(passage: str) -> str:
    return UNDER if passage == OVER else OVER


@dataclass(frozen=True, eq=False)
class _Diagram:
    endpoints: tuple[tuple[int, str], ...] = ()
    signs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        eps = tuple((int(lab), str(p)) for lab, p in self.endpoints)
        object.__setattr__(self, "endpoints", eps)
        object.__setattr__(self, "signs", {int(k): int(v) for k, v in dict(self.signs).items()})
        seen: dict[int, list[str]] = {}
        for lab, p in eps:
            if p not in (OVER, UNDER):
                raise GaussCodeError(f"bad passage {p!r} for label {lab}")
            if lab <= 0:
                raise GaussCodeError(f"labels must be positive integers, got {lab}")
            seen.setdefault(lab, []).append(p)
        for lab, ps in seen.items():
            if len(ps) != 2:
                raise GaussCodeError(f"label {lab} appears {len(ps)} times (expected 2)")
            if sorted(ps) != [OVER, UNDER]:
                raise GaussCodeError(f"label {lab} needs one O and one U token, got {''.join(ps)}")
        if set(seen) != set(self.signs):
            raise GaussCodeError("sign table does not match the chord labels")
        for lab, s in self.signs.items():
            if s not in (-1, 1):
                raise GaussCodeError(f"label {lab}: sign must be +1 or -1")
        pos: dict[int, list[int]] = {lab: [0, 0] for lab in seen}
        for k, (lab, p) in enumerate(eps):
            pos[lab][0 if p == OVER else 1] = k
        object.__setattr__(self, "_pos", {lab: tuple(v) for lab, v in pos.items()})

    # basic accessors --------------------------------------------------

    def __len__(self):
        return len(self.signs)

    @property
    def labels(self) -> list[int]:
        """Chord labels in order of first appearance."""
        out, seen = [], set()
        for lab, _ in self.endpoints:
            if lab not in seen:
                seen.add(lab)
                out.append(lab)
        return out

    def sign(self, label: int) -> int:
        self._require(label)
        return self.signs[label]

    def positions(self, label: int) -> tuple[int, int]:
        """(over position, under position) of a chord."""
        self._require(label)
        return self._pos[label]

    def chord(self, label: int) -> Chord:
        o, u = self.positions(label)
        return Chord(label, o, u, self.signs[label])

    @property
    def chords(self) -> list[Chord]:
        return [self.chord(lab) for lab in self.labels]

    def _require(self, label: int):
        if label not in self.signs:
            raise KeyError(f"no chord labelled {label}")

    def _with(self, endpoints, signs):
        return type(self)(tuple(endpoints), signs)

    def relabel(self, mapping: Mapping[int, int]):
        return self._with(
            [(mapping[lab], p) for lab, p in self.endpoints],
            {mapping[lab]: s for lab, s in self.signs.items()},
        )

    def canonical(self):
        """Relabel chords 1..n in order of first appearance."""
        return self.relabel({lab: i + 1 for i, lab in enumerate(self.labels)})

    # rendering --------------------------------------------------------

    def to_code(self) -> str:
        return " ".join(
            f"{p}{lab}{'+' if self.signs[lab] > 0 else '-'}" for lab, p in self.endpoints
        )

    def __str__(self):
        return self.to_code()

    def to_dict(self) -> dict:
        return {
            "endpoints": [
                {"label": lab, "passage": p, "sign": self.signs[lab]}
                for lab, p in self.endpoints
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class LongDiagram(_Diagram):
    """Gauss code of a long virtual knot diagram, read from -inf to +inf."""

    def __eq__(self, other):
        if not isinstance(other, LongDiagram):
            return NotImplemented
        return self.endpoints == other.endpoints and self.signs == other.signs

    def __hash__(self):
        return hash((self.endpoints, tuple(sorted(self.signs.items()))))

    def __repr__(self):
        return f"LongDiagram({self.to_code()!r})"


class ClosedDiagram(_Diagram):
    """Gauss code of a closed virtual knot diagram; equality is up to rotation."""

    def rotations(self):
        m = len(self.endpoints)
        for r in range(max(m, 1)):
            yield self.endpoints[r:] + self.endpoints[:r]

    def __eq__(self, other):
        if not isinstance(other, ClosedDiagram):
            return NotImplemented
        if self.signs != other.signs or len(self.endpoints) != len(other.endpoints):
            return False
        return any(rot == other.endpoints for rot in self.rotations())

    def __hash__(self):
        return hash((frozenset(self.endpoints), tuple(sorted(self.signs.items()))))

    def __repr__(self):
        return f"ClosedDiagram({self.to_code()!r})"


# parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"([OU])(\d+)([+-])")
_SEP = re.compile(r"[\s,]+")


def _parse_tokens(text: str):
    endpoints, signs, pos = [], {}, 0
    where: dict[int, list[tuple[int, str]]] = {}
    text_len = len(text)
    m = _SEP.match(text, pos)
    if m:
        pos = m.end()
    while pos < text_len:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GaussCodeError(f"expected token like O1+ or U2-, got {text[pos:pos + 8]!r}", pos)
        passage, lab, sgn = m.group(1), int(m.group(2)), (1 if m.group(3) == "+" else -1)
        if lab <= 0:
            raise GaussCodeError("labels must be positive integers", pos)
        if lab in signs and signs[lab] != sgn:
            raise GaussCodeError(f"label {lab} carries mismatched signs", pos)
        signs[lab] = sgn
        endpoints.append((lab, passage))
        where.setdefault(lab, []).append((pos, passage))
        if len(where[lab]) > 2:
            raise GaussCodeError(f"label {lab} appears more than twice", pos)
        if len(where[lab]) == 2 and where[lab][0][1] == passage:
            raise GaussCodeError(f"label {lab} needs one O and one U token", pos)
        pos = m.end()
        sep = _SEP.match(text, pos)
        if sep:
            pos = sep.end()
        elif pos < text_len:
            raise GaussCodeError("tokens must be separated by whitespace or commas", pos)
    for lab, hits in where.items():
        if len(hits) == 1:
            raise GaussCodeError(f"label {lab} has no partner token", hits[0][0])
    return endpoints, signs


def parse_long(text: str) -> LongDiagram:
    endpoints, signs = _parse_tokens(text)
    return LongDiagram(tuple(endpoints), signs)


def parse_closed(text: str) -> ClosedDiagram:
    endpoints, signs = _parse_tokens(text)
    return ClosedDiagram(tuple(endpoints), signs)


def from_dict(data: dict, closed: bool = False):
    endpoints, signs = [], {}
    for e in data["endpoints"]:
        lab, p, s = int(e["label"]), e["passage"], int(e["sign"])
        if lab in signs and signs[lab] != s:
            raise GaussCodeError(f"label {lab} carries mismatched signs")
        signs[lab] = s
        endpoints.append((lab, p))
    cls = ClosedDiagram if closed else LongDiagram
    return cls(tuple(endpoints), signs)


def from_json(text: str, closed: bool = False):
    return from_dict(json.loads(text), closed=closed)


# crossing data ------------------------------------------------------------

def crossing_type(D: LongDiagram, label: int) -> int:
    """0 if the over passage comes first along the line, else 1."""
    o, u = D.positions(label)
    return 0 if o < u else 1


def type_sets(D: LongDiagram) -> tuple[list[int], list[int]]:
    I0, I1 = [], []
    for lab in D.labels:
        (I0 if crossing_type(D, lab) == 0 else I1).append(lab)
    return I0, I1


def writhe(D: _Diagram, a: int | None = None) -> int:
    """The a-writhe (sum of signs of type-a crossings); total writhe if a is None."""
    if a is None:
        return sum(D.signs.values())
    if a not in (0, 1):
        raise ValueError("crossing type must be 0 or 1")
    return sum(D.signs[lab] for lab in D.labels if crossing_type(D, lab) == a)


# structural transforms ----------------------------------------------------

def switch_all(D: LongDiagram) -> LongDiagram:
    """Switch over/under at every real crossing (D#)."""
    return D._with([(lab, _flip(p)) for lab, p in D.endpoints],
                   {lab: -s for lab, s in D.signs.items()})


def reverse(D: LongDiagram) -> LongDiagram:
    """Reverse the orientation (-D)."""
    return D._with(list(reversed(D.endpoints)), D.signs)


def mirror(D: LongDiagram) -> LongDiagram:
    """Image under an orientation-reversing homeomorphism (D*)."""
    return D._with(D.endpoints, {lab: -s for lab, s in D.signs.items()})


def crossing_change(D: _Diagram, label: int) -> _Diagram:
    D._require(label)
    eps = [(lab, _flip(p) if lab == label else p) for lab, p in D.endpoints]
    signs = dict(D.signs)
    signs[label] = -signs[label]
    return D._with(eps, signs)


def virtualize(D: _Diagram, label: int) -> _Diagram:
    """Replace a real crossing by a virtual one, i.e. delete its chord."""
    D._require(label)
    return D._with([e for e in D.endpoints if e[0] != label],
                   {lab: s for lab, s in D.signs.items() if lab != label})


def product(D: LongDiagram, D2: LongDiagram) -> LongDiagram:
    """Concatenate D2 after D; D2's labels are shifted past D's."""
    shift = max(D.signs, default=0)
    eps = list(D.endpoints) + [(lab + shift, p) for lab, p in D2.endpoints]
    signs = dict(D.signs)
    signs.update({lab + shift: s for lab, s in D2.signs.items()})
    return LongDiagram(tuple(eps), signs)


def closure(D: LongDiagram) -> ClosedDiagram:
    return ClosedDiagram(D.endpoints, D.signs)


def descending(D: LongDiagram) -> LongDiagram:
    """Crossing-change every type-1 chord so all crossings are type 0."""
    for lab in D.labels:
        if crossing_type(D, lab) == 1:
            D = crossing_change(D, lab)
    return D


def untwist(D: LongDiagram) -> LongDiagram:
    """Append cancelling kinks at the right end until both a-writhes vanish."""
    eps, signs = list(D.endpoints), dict(D.signs)
    nxt = max(signs, default=0) + 1
    for a in (0, 1):
        w = writhe(D, a)
        s = -1 if w > 0 else 1
        for _ in range(abs(w)):
            eps += [(nxt, OVER), (nxt, UNDER)] if a == 0 else [(nxt, UNDER), (nxt, OVER)]
            signs[nxt] = s
            nxt += 1
    return LongDiagram(tuple(eps), signs)


def from_tokens(tokens: Iterable[tuple[int, str, int]], closed: bool = False):
    """Build a diagram from (label, passage, sign) triples."""
    endpoints, signs = [], {}
    for lab, p, s in tokens:
        if lab in signs and signs[lab] != s:
            raise GaussCodeError(f"label {lab} carries mismatched signs")
        signs[lab] = s
        endpoints.append((lab, p))
    return (ClosedDiagram if closed else LongDiagram)(tuple(endpoints), signs)
