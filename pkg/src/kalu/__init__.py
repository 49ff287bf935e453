"""Kazhdan-Lusztig and decomposition polynomials of Grassmannian Schubert varieties."""

from .polynomial import IntPoly, gauss_poincare
from .schubert import InvalidDatum, SchubertDatum, essentialize, lambda_of
from .lattice import PosetContext
from .engine import (
    KaLuInvariantError, KaLuTable, build_table, decompose, full_table, kalu,
    scan_relevant, smallness, verify_identities,
)

__all__ = [
    "IntPoly", "gauss_poincare", "InvalidDatum", "SchubertDatum",
    "essentialize", "lambda_of", "PosetContext", "KaLuInvariantError",
    "KaLuTable", "build_table", "decompose", "full_table", "kalu",
    "scan_relevant", "smallness", "verify_identities",
]
