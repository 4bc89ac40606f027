"""Exact number kernel: rationals, polynomials, real algebraic numbers."""

from .algebraic import (
    NEG_INF,
    POS_INF,
    AlgebraicReal,
    Exact,
    Infinity,
    Perturbed,
    PerturbedRational,
    compare,
    field_value,
    isolate_roots,
    rational_between,
    sign_at,
    simplest_between,
)
from .fields import Eps, QuadSurd
from .poly import (
    Poly,
    Rational,
    as_rational,
    format_rational,
    poly_gcd,
    sgn,
    sqf_part,
    sturm_count,
    sturm_sequence,
)


def to_float(x) -> float:
    """Decimal approximation of any exact value (display only)."""
    if isinstance(x, Infinity):
        return float("inf") * x.sign
    if isinstance(x, Perturbed):
        return float(x.base)
    return float(x)


__all__ = [
    "NEG_INF", "POS_INF", "AlgebraicReal", "Exact", "Infinity", "Perturbed",
    "PerturbedRational", "compare", "field_value", "isolate_roots",
    "rational_between", "sign_at", "simplest_between", "Eps", "QuadSurd", "Poly",
    "Rational", "as_rational", "format_rational", "poly_gcd", "sgn", "sqf_part",
    "sturm_count", "sturm_sequence", "to_float",
]
