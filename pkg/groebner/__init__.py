"""自由加群の部分加群に対するグレブナー基底・正規形・シジジーを提供するパッケージ。"""

from .engine import (
    GroebnerBasis,
    GroebnerEngine,
    ideal_multiples,
    polynomial_normal_form,
    reduce_modulo_ideal,
)
from .quotient import build_ring
from .vectors import FreeModule, Vec, VectorElem, lead_term, vec_add, vec_degree, vec_scale, vec_sub

__all__ = [
    "FreeModule",
    "GroebnerBasis",
    "GroebnerEngine",
    "Vec",
    "VectorElem",
    "build_ring",
    "ideal_multiples",
    "lead_term",
    "polynomial_normal_form",
    "reduce_modulo_ideal",
    "vec_add",
    "vec_degree",
    "vec_scale",
    "vec_sub",
]
