"""係数体・単項式順序・斉次多項式・環記述子を提供するパッケージ。"""

from .monomials import Comparison, Monomial, TermOrder, compare_monomials, monomial_degree
from .polynomials import (
    ArithOp,
    Polynomial,
    is_homogeneous,
    leading_term,
    poly_arith,
    poly_degree,
    sorted_terms,
)
from .ring import RingDescriptor, format_polynomial
from .scalars import DEFAULT_PRIME, FieldMode, scalar_inverse

__all__ = [
    "ArithOp",
    "Comparison",
    "DEFAULT_PRIME",
    "FieldMode",
    "Monomial",
    "Polynomial",
    "RingDescriptor",
    "TermOrder",
    "compare_monomials",
    "format_polynomial",
    "is_homogeneous",
    "leading_term",
    "monomial_degree",
    "poly_arith",
    "poly_degree",
    "scalar_inverse",
    "sorted_terms",
]
