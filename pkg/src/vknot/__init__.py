"""Writhe and intersection polynomials of long virtual knots."""
from __future__ import annotations

from .gauss import ClosedDiagram, GaussCodeError, LongDiagram, parse_closed, parse_long
from .invariants import (
    InvariantReport, closed_invariants, full_report, intersection_polynomial,
    tilde_invariants, writhe_polynomial,
)
from .laurent import LaurentPoly, parse_poly
from .surface import build_carter, genus, pairing_tables

__all__ = [
    "ClosedDiagram", "GaussCodeError", "InvariantReport", "LaurentPoly", "LongDiagram",
    "build_carter", "closed_invariants", "full_report", "genus", "intersection_polynomial",
    "pairing_tables", "parse_closed", "parse_long", "parse_poly", "tilde_invariants",
    "writhe_polynomial",
]
__version__ = "0.1.0"
