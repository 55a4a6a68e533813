"""Exact arithmetic layer: rationals, polynomials, root isolation, resultants."""

from .linalg import bareiss_det, charpoly, congruence_inertia, det, inverse, matmul
from .poly import UniPoly, as_fraction, interpolate, poly_gcd, squarefree_decomposition, squarefree_part
from .resultant import UnsupportedDegree, discriminant, formal_resultant, resultant_uni, ternary_resultant
from .roots import (
    IsolatingInterval,
    UndefinedRootSet,
    count_real_roots,
    isolate_real_roots,
    sign_at,
    sign_at_root,
)
from .ternary import TernaryForm, monomials

__all__ = [
    "IsolatingInterval", "TernaryForm", "UndefinedRootSet", "UniPoly", "UnsupportedDegree",
    "as_fraction", "bareiss_det", "charpoly", "congruence_inertia", "count_real_roots", "det",
    "discriminant", "formal_resultant", "interpolate", "inverse", "isolate_real_roots", "matmul",
    "monomials", "poly_gcd", "resultant_uni", "sign_at", "sign_at_root", "squarefree_decomposition",
    "squarefree_part", "ternary_resultant",
]
