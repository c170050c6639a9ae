"""The two-parameter family built on the flat curve Gamma(n).

``kprime(n)`` has all signs positive (chords 1..n of type 1, chord n+1 of
type 0); ``k_family(n)`` is obtained from it by crossing changes at chords
1..n, which makes every crossing type 0.  Closed forms for their
invariants and pairing tables are kept here so that the CLI can flag
mismatches.
"""
from __future__ import annotations

import numpy as np

from .gauss import LongDiagram, crossing_change, parse_long
from .laurent import LaurentPoly


def _need(n: int):
    if n < 2:
        raise ValueError(f"family index must be >= 2, got {n}")


def kprime(n: int) -> LongDiagram:
    _need(n)
    toks = [f"O{n + 1}+"] + [f"U{i}+" for i in range(n, 0, -1)] + [f"U{n + 1}+"]
    toks += [f"O{i}+" for i in range(1, n + 1)]
    return parse_long(" ".join(toks))


def k_family(n: int) -> LongDiagram:
    D = kprime(n)
    for i in range(1, n + 1):
        D = crossing_change(D, i)
    return D


def family(name: str, n: int) -> LongDiagram:
    if name == "K":
        return k_family(n)
    if name in ("Kprime", "K'"):
        return kprime(n)
    raise ValueError(f"unknown family {name!r}")


def _span(lo: int, hi: int, c: int = 1) -> list[tuple[int, int]]:
    return [(k, c) for k in range(lo, hi + 1)]


def k_closed_forms(n: int) -> dict[str, LaurentPoly]:
    """Every nonzero invariant of K(n); omitted slots are zero."""
    _need(n)
    sym = _span(1, n - 1, -1) + _span(-(n - 1), -1, -1)
    return {
        "W0": LaurentPoly([(n, 1), (1, -n), (0, n - 1)]),
        "F00": LaurentPoly(sym + [(0, 2 * (n - 1))]),
        "G00": LaurentPoly([(n, n - 2)] + _span(1, n - 1, -2) + [(1, n)]),
        "H00": LaurentPoly(
            [(n, n - 1), (-n, n - 1)] + sym
            + [(1, -n * (n - 1)), (-1, -n * (n - 1)), (0, 2 * n * (n - 1))]
        ),
    }


def kprime_closed_forms(n: int) -> dict[str, LaurentPoly]:
    _need(n)
    F01 = LaurentPoly(_span(1, n - 1) + [(0, -n + 1)])
    H01 = LaurentPoly([(-n, -n)] + _span(-(n - 1), -1) + [(0, n + 1), (1, -n)])
    return {
        "W0": LaurentPoly([(n, 1), (0, -1)]),
        "W1": LaurentPoly([(1, n), (0, -n)]),
        "F01": F01,
        "F10": F01.invert_var(),
        "G01": LaurentPoly([(n, -(n - 1))] + _span(1, n - 1)),
        "G10": LaurentPoly(_span(2, n) + [(1, -(n - 1))]),
        "H00": LaurentPoly([(n, -1), (0, 2), (-n, -1)]),
        "H01": H01,
        "H10": H01.invert_var(),
        "H11": LaurentPoly([(1, -n * n), (0, 2 * n * n), (-1, -n * n)]),
    }


def closed_forms(name: str, n: int) -> dict[str, LaurentPoly]:
    return k_closed_forms(n) if name == "K" else kprime_closed_forms(n)


def gamma_tables(n: int) -> dict[str, np.ndarray]:
    """Intersection numbers of Gamma(n), rows/columns ordered by chord 1..n+1."""
    _need(n)
    N = n + 1
    A = np.zeros((N, N), dtype=np.int64)
    for j in range(1, n + 1):
        A[n, j - 1] = j - 1
        A[j - 1, n] = -(j - 1)
    v = np.array([1] * n + [n], dtype=np.int64)
    B = v[:, None] - A
    C = -v[:, None] + v[None, :] + A
    return {"A": A, "B": B, "C": C, "v": v}
