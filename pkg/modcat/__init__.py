"""次数付き有限表示加群 (部分商加群) の圏: 表示・核・ホモロジー・Hilbert 級数。"""

from .hilbert import (
    INFINITE,
    MINUS_INFINITY,
    HilbertData,
    graded_dual_hilbert,
    hilbert_data,
    krull_dimension,
    length,
)
from .matrix import GradedMatrix, matrix_from_rows
from .module import (
    SubquotientModule,
    cokernel,
    direct_sum,
    free_module_as_subquotient,
    subquotient,
    zero_module,
)
from .presentation import MinimalPresentation, kernel_and_homology, minimal_generators, minimal_presentation

__all__ = [
    "GradedMatrix",
    "HilbertData",
    "INFINITE",
    "MINUS_INFINITY",
    "MinimalPresentation",
    "SubquotientModule",
    "cokernel",
    "direct_sum",
    "free_module_as_subquotient",
    "graded_dual_hilbert",
    "hilbert_data",
    "kernel_and_homology",
    "krull_dimension",
    "length",
    "matrix_from_rows",
    "minimal_generators",
    "minimal_presentation",
    "subquotient",
    "zero_module",
]
