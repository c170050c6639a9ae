"""Integer Laurent polynomials in one variable ``t``.

Values are immutable and kept in canonical sparse form (no zero
coefficients), so equality of two polynomials is equality of their term
mappings.  Coefficients are Python ints; exponents must fit in a signed
64-bit integer.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Mapping

_EXP_LIMIT = 2**63


def _check_exponent(k) -> int:
    k = int(k)
    if not -_EXP_LIMIT <= k < _EXP_LIMIT:
        raise OverflowError(f"exponent {k} out of range")
    return k


class LaurentPoly:
    """An element of Z[t, t^-1]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[int, int] = {}
        for k, c in terms:
            k = _check_exponent(k)
            acc[k] = acc.get(k, 0) + int(c)
        self._terms = {k: c for k, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> LaurentPoly:
        return cls([(k, c)])

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, k: int) -> int:
        return self._terms.get(k, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def max_degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def min_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    # ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: c * other for k, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def invert_var(self) -> LaurentPoly:
        """Substitute t -> t^-1."""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def is_reciprocal(self) -> bool:
        return self.invert_var() == self

    def __call__(self, t):
        return sum(c * t**k for k, c in self._terms.items())

    def derivative_at_one(self, order: int) -> int:
        """Exact value of the first or second derivative at t = 1."""
        if order == 1:
            return sum(k * c for k, c in self._terms.items())
        if order == 2:
            return sum(k * (k - 1) * c for k, c in self._terms.items())
        raise ValueError(f"derivative order must be 1 or 2, got {order!r}")

    # comparison ------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # rendering -------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else f"t^{{{k}}}"
                body = var if mag == 1 else f"{mag}{var}"
            if c < 0:
                out += "-" + body
            else:
                out += ("+" if out else "") + body
        return out


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


# functional surface ----------------------------------------------------

def lp_make(terms: Iterable[tuple[int, int]]) -> LaurentPoly:
    return LaurentPoly(list(terms))


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def lp_neg(p: LaurentPoly) -> LaurentPoly:
    return -p


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def lp_scale(p: LaurentPoly, c: int) -> LaurentPoly:
    return p * int(c)


def lp_invert_var(p: LaurentPoly) -> LaurentPoly:
    return p.invert_var()


def lp_is_reciprocal(p: LaurentPoly) -> bool:
    return p.is_reciprocal()


def lp_derivative_at_one(p: LaurentPoly, order: int) -> int:
    return p.derivative_at_one(order)


def t_pow_minus_one(k: int) -> LaurentPoly:
    """t^k - 1 (zero when k == 0)."""
    return LaurentPoly([(k, 1), (0, -1)])


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*(?:\*\s*)?)?
        (?P<var>t(?:\s*\^\s*(?:\{\s*(?P<be>-?\d+)\s*\}|(?P<e>-?\d+)))?)?
        \s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse the text form produced by :meth:`LaurentPoly.to_text`.

    Also accepts LaTeX-style braces (``t^{-2}``) and juxtaposition
    (``2t``).
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    pos, terms, first = 0, [], True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m["coef"] is None and m["var"] is None):
            raise ValueError(f"cannot parse polynomial at offset {pos}: {s!r}")
        if m["sign"] is None and not first:
            raise ValueError(f"missing operator at offset {pos}: {s!r}")
        sign = -1 if m["sign"] == "-" else 1
        coef = int(m["coef"]) if m["coef"] is not None else 1
        if m["var"] is None:
            k = 0
        else:
            e = m["be"] if m["be"] is not None else m["e"]
            k = int(e) if e is not None else 1
        terms.append((k, sign * coef))
        pos, first = m.end(), False
    return LaurentPoly(terms)
