from __future__ import annotations

import pytest

from algebra.ring import RingDescriptor
from exceptions import ContractViolation, HomogeneityError, InvariantDomainError, StructuralError
from groebner.quotient import build_ring
from groebner.vectors import FreeModule
from modcat.hilbert import INFINITE, MINUS_INFINITY, HilbertData, graded_dual_hilbert, hilbert_data
from modcat.matrix import GradedMatrix, matrix_from_rows
from modcat.module import cokernel, direct_sum, free_module_as_subquotient, zero_module
from modcat.presentation import kernel_and_homology, minimal_presentation


def test_hilbert_of_residue_field_and_line(plane: RingDescriptor) -> None:
    """k と S/(x) の Hilbert データを検証する。"""
    x, y = plane.gens()
    field = cokernel(matrix_from_rows(plane, [[x, y]], [0], [1, 1]))
    line = cokernel(matrix_from_rows(plane, [[x]], [0], [1]))

    k_data = hilbert_data(field)
    assert (k_data.dimension, k_data.length) == (0, 1)
    assert k_data.values(range(3)) == [1, 0, 0]

    line_data = hilbert_data(line)
    assert line_data.dimension == 1
    assert line_data.length == INFINITE
    assert line_data.values(range(4)) == [1, 1, 1, 1]


def test_hilbert_of_polynomial_ring(plane: RingDescriptor) -> None:
    """S の Hilbert 関数が d + 1 であることを検証する。"""
    data = hilbert_data(free_module_as_subquotient(plane, (0,)))
    assert data.dimension == 2
    assert data.values(range(5)) == [1, 2, 3, 4, 5]
    assert data.multiplicity == 1


def test_hilbert_of_non_cm_ring(plane: RingDescriptor) -> None:
    """k[x,y]/(x^2, xy) の Hilbert 関数が 1, 2, 1, 1, ... であることを検証する。"""
    x, y = plane.gens()
    ring = build_ring(("x", "y"), ideal=[x**2, x * y])

    data = hilbert_data(free_module_as_subquotient(ring, (0,)))
    assert data.dimension == 1
    assert data.values(range(5)) == [1, 2, 1, 1, 1]


def test_hilbert_shift_and_series_equality() -> None:
    """ひねりと級数の比較が (1 - t) の約分に依らないことを検証する。"""
    reduced = HilbertData.from_numerator({0: 1}, 1)
    unreduced = HilbertData.from_numerator({0: 1, 1: -1}, 2)

    assert reduced.same_series(unreduced)
    # M(1) の Hilbert 関数は H(d + 1) であることを確認する。
    shifted = HilbertData.from_numerator({1: 1}, 0).shifted(1)
    assert shifted.value(0) == 1
    assert shifted.value(1) == 0


def test_graded_dual_of_finite_length() -> None:
    """有限長加群の双対の Hilbert 関数が次数反転になることを検証する。"""
    x, y = build_ring(("x", "y")).gens()
    ring = build_ring(("x", "y"), ideal=[x**2, y**2])
    dual = graded_dual_hilbert(free_module_as_subquotient(ring, (0,)))

    assert dual.values([-2, -1, 0]) == [1, 2, 1]
    with pytest.raises(InvariantDomainError):
        graded_dual_hilbert(HilbertData.from_numerator({0: 1}, 1))


def test_zero_module_has_no_dimension(plane: RingDescriptor) -> None:
    """零加群の次元が -inf、長さが 0 であることを検証する。"""
    data = hilbert_data(zero_module(plane))
    assert data.is_zero
    assert data.dimension == MINUS_INFINITY
    assert data.length == 0


def test_direct_sum_adds_hilbert_functions(plane: RingDescriptor) -> None:
    """直和の Hilbert 関数が和になることを検証する。"""
    x, y = plane.gens()
    field = cokernel(matrix_from_rows(plane, [[x, y]], [0], [1, 1]))
    line = cokernel(matrix_from_rows(plane, [[x]], [0], [1]))

    data = hilbert_data(direct_sum(field, line))
    assert data.values(range(3)) == [2, 1, 1]


def test_minimal_presentation_removes_units(plane: RingDescriptor) -> None:
    """単元成分を持つ表示から生成元と関係式が減ることを検証する。"""
    x, y = plane.gens()
    one, zero = plane.poly_ring.one, plane.poly_ring.zero
    # e0 = -x e1, y e1 = 0 なので M ≅ S(1)/(y)。
    module = cokernel(matrix_from_rows(plane, [[one, zero], [x, y]], [0, -1], [0, 0]))
    presentation = minimal_presentation(module)

    assert presentation.num_generators == 1
    assert presentation.generator_twists == (-1,)
    assert presentation.num_relations == 1


def test_minimal_presentation_drops_redundant_relations(plane: RingDescriptor) -> None:
    """冗長な関係式 x + y が除かれることを検証する。"""
    x, y = plane.gens()
    module = cokernel(matrix_from_rows(plane, [[x, y, x + y]], [0], [1, 1, 1]))
    presentation = minimal_presentation(module)

    assert (presentation.num_generators, presentation.num_relations) == (1, 2)


def test_matrix_rejects_inhomogeneous_column(plane: RingDescriptor) -> None:
    """始域の次数と合わない列を拒否することを検証する。"""
    x, _ = plane.gens()
    target = FreeModule(plane, (0,))
    source = FreeModule(plane, (2,))
    with pytest.raises(HomogeneityError):
        GradedMatrix(source, target, (target.vector({0: x}),))
    with pytest.raises(StructuralError):
        GradedMatrix(source, target, ())


def test_koszul_complex_homology(plane: RingDescriptor) -> None:
    """Koszul 複体の中央のホモロジーが消え、0 次のホモロジーが k になることを検証する。"""
    x, y = plane.gens()
    d1 = matrix_from_rows(plane, [[x, y]], [0], [1, 1])
    d2 = matrix_from_rows(plane, [[y], [-x]], [1, 1], [2])
    to_zero = matrix_from_rows(plane, [], [], [0])

    assert hilbert_data(kernel_and_homology(d2, d1)).is_zero
    assert hilbert_data(kernel_and_homology(d1, to_zero)).length == 1


def test_non_complex_is_rejected(plane: RingDescriptor) -> None:
    """合成が零でない組は ContractViolation になることを検証する。"""
    x, y = plane.gens()
    d1 = matrix_from_rows(plane, [[x, y]], [0], [1, 1])
    bad = matrix_from_rows(plane, [[x], [x]], [1, 1], [2])
    with pytest.raises(ContractViolation):
        kernel_and_homology(bad, d1)


def test_hilbert_over_artinian_and_hypersurface_rings() -> None:
    """剰余環の Hilbert 関数と次元がイデアルを含めて計算されることを検証する。"""
    x, y = build_ring(("x", "y")).gens()
    artinian = build_ring(("x", "y"), ideal=[x**2, y**2])

    data = hilbert_data(free_module_as_subquotient(artinian, (0,)))
    assert data.values(range(4)) == [1, 2, 1, 0]
    assert (data.dimension, data.length) == (0, 4)

    a, b, c = build_ring(("x", "y", "z")).gens()
    hypersurface = build_ring(("x", "y", "z"), ideal=[a * b + c**2])
    cone = hilbert_data(free_module_as_subquotient(hypersurface, (0,)))
    assert cone.dimension == 2
    assert cone.values(range(4)) == [1, 3, 5, 7]


def test_minimal_presentation_over_quotient_ring() -> None:
    """I に入る関係式 y^2 は剰余環上の極小表示から除かれることを検証する。"""
    x, y = build_ring(("x", "y")).gens()
    ring = build_ring(("x", "y"), ideal=[x**2, y**2])
    module = cokernel(matrix_from_rows(ring, [[x, y**2]], [0], [1, 2]))
    presentation = minimal_presentation(module)

    assert (presentation.num_generators, presentation.num_relations) == (1, 1)
    assert hilbert_data(presentation.as_module()).values(range(3)) == [1, 1, 0]


def test_homology_over_quotient_ring_is_exact() -> None:
    """k[x]/(x^2) 上の R(-2) -x-> R(-1) -x-> R が真ん中で完全であることを検証する。"""
    (x,) = build_ring(("x",)).gens()
    ring = build_ring(("x",), ideal=[x**2])
    d1 = matrix_from_rows(ring, [[x]], [0], [1])
    d2 = matrix_from_rows(ring, [[x]], [1], [2])

    assert hilbert_data(kernel_and_homology(d2, d1)).is_zero
