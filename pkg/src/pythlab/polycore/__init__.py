"""Exact sparse polynomial arithmetic over Q."""
from .linmap import LinMap, SingularMatrixError
from .ops import (compose_linear, divide_binomial, exact_quotient, is_perfect_square, leading_block,
                  real_square_root, substitute_power, top_form)
from .parser import PolyParseError, parse_poly
from .poly import ONE, VAR_NAMES, X, Y, Mono, Poly, as_rat, format_poly, mono_order_key

__all__ = [
    "LinMap", "SingularMatrixError", "Poly", "Mono", "X", "Y", "ONE", "VAR_NAMES",
    "as_rat", "format_poly", "mono_order_key", "parse_poly", "PolyParseError",
    "compose_linear", "substitute_power", "divide_binomial", "leading_block",
    "top_form", "is_perfect_square", "real_square_root", "exact_quotient",
]
