from __future__ import annotations

import random

import pytest
from sympy import QQ

from exceptions import StructuralError
from groebner.quotient import build_ring
from groebner.vectors import FreeModule
from invariants.calculator import InvariantCalculator, residue_field, ring_module
from modcat.hilbert import hilbert_data
from modcat.matrix import matrix_from_rows
from modcat.module import subquotient
from oracle.degreewise import DegreewiseOracle, matrix_rank, monomials_of_degree


@pytest.fixture()
def oracle() -> DegreewiseOracle:
    return DegreewiseOracle()


def test_monomials_and_rank() -> None:
    """単項式の列挙と疎行列の階数を検証する。"""
    assert len(monomials_of_degree(2, 2)) == 3
    assert monomials_of_degree(3, -1) == ()
    assert matrix_rank([{0: QQ(1), 1: QQ(1)}, {0: QQ(2), 1: QQ(2)}, {}], 2, QQ) == 1


def test_hilbert_function_matches_groebner_computation(oracle: DegreewiseOracle) -> None:
    """次数ごとの線形代数による Hilbert 関数がグレブナー基底による値と一致することを検証する。"""
    x, y = build_ring(("x", "y")).gens()
    ring = build_ring(("x", "y"), ideal=[x**2, x * y])
    module = ring_module(ring)

    assert oracle.hilbert_values(module, 0, 4) == [1, 2, 1, 1, 1]
    assert oracle.hilbert_values(module, 0, 4) == hilbert_data(module).values(range(5))
    assert oracle.standard_monomial_count(ring, 2) == 1


def test_koszul_betti_of_residue_field(oracle: DegreewiseOracle) -> None:
    """S 上の k の Koszul ホモロジーが Betti 表 1, 2, 1 を与えることを検証する。"""
    field = residue_field(build_ring(("x", "y")))

    assert oracle.koszul_betti(field, 3) == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    assert oracle.koszul_depth(field, 3) == 0


def test_bass_over_polynomial_ring(oracle: DegreewiseOracle) -> None:
    """S の S 上の Bass 数が 0, 0, 1 であることを検証する。"""
    assert oracle.bass_over_polynomial_ring(ring_module(build_ring(("x", "y"))), 2) == [0, 0, 1]


def test_syzygy_dimension_of_linear_forms(oracle: DegreewiseOracle) -> None:
    """(x, y) の次数 2 のシジジーが 1 次元であることを検証する。"""
    plane = build_ring(("x", "y"))
    x, y = plane.gens()
    cyclic = FreeModule(plane, (0,))

    assert oracle.syzygy_dimension([cyclic.vector({0: x}), cyclic.vector({0: y})], (1, 1), 2) == 1
    assert oracle.syzygy_dimension([], (), 2) == 0


def test_koszul_requires_cokernel_form(oracle: DegreewiseOracle) -> None:
    """余核表示でない加群の Koszul ホモロジーは拒否することを検証する。"""
    plane = build_ring(("x", "y"))
    x, _ = plane.gens()
    module = subquotient(matrix_from_rows(plane, [[x]], [0], [1]), matrix_from_rows(plane, [[]], [0], []))

    with pytest.raises(StructuralError):
        oracle.koszul_homology(module, 0, 1)


def test_hilbert_matches_on_random_monomial_ideals(oracle: DegreewiseOracle) -> None:
    """乱数で作った単項式イデアルの剰余環で、2つの Hilbert 関数の計算が一致することを検証する。"""
    rng = random.Random(20240611)
    x, y, z = build_ring(("x", "y", "z")).gens()
    variables = (x, y, z)
    for _ in range(5):
        generators = []
        for _ in range(rng.randint(1, 3)):
            monomial = x**0
            for _ in range(rng.randint(2, 3)):
                monomial *= rng.choice(variables)
            generators.append(monomial)
        ring = build_ring(("x", "y", "z"), ideal=generators)
        module = ring_module(ring)

        # 次数 0 から 5 までの値を比べる。
        assert oracle.hilbert_values(module, 0, 5) == hilbert_data(module).values(range(6)), generators


def test_hilbert_values_over_quotient_ring(oracle: DegreewiseOracle) -> None:
    """剰余環上でも I・F を I の生成元から作り、Hilbert 関数を正しく数えることを検証する。"""
    x, y, z = build_ring(("x", "y", "z")).gens()
    ring = build_ring(("x", "y", "z"), ideal=[x * y**2, x**2 * y, x**2 * z])

    assert oracle.hilbert_values(ring_module(ring), 0, 5) == [1, 3, 6, 7, 8, 9]

    x, y = build_ring(("x", "y")).gens()
    artinian = build_ring(("x", "y"), ideal=[x**2, y**2])
    assert oracle.hilbert_values(ring_module(artinian), 0, 3) == [1, 2, 1, 0]


def test_complex_homology_respects_the_ideal(oracle: DegreewiseOracle) -> None:
    """k[x]/(x^2) 上の R(-1) -x-> R の核を次数ごとに数えることを検証する。"""
    (x,) = build_ring(("x",)).gens()
    ring = build_ring(("x",), ideal=[x**2])
    multiplication = matrix_from_rows(ring, [[x]], [0], [1])

    # x・e は x^2 = 0 に移るので核に入る。
    assert oracle.complex_homology(multiplication.source, None, multiplication, 1) == 0
    assert oracle.complex_homology(multiplication.source, None, multiplication, 2) == 1
    assert oracle.complex_homology(multiplication.target, multiplication, None, 0) == 1
    assert oracle.complex_homology(multiplication.target, multiplication, None, 1) == 0


def test_complex_homology_of_residue_field_resolution(oracle: DegreewiseOracle) -> None:
    """k[x]/(x^2) 上の k の極小分解が次数ごとに完全であることを検証する。"""
    (x,) = build_ring(("x",)).gens()
    ring = build_ring(("x",), ideal=[x**2])
    resolution = InvariantCalculator().resolution(residue_field(ring), 3)

    for index in (1, 2):
        middle = resolution.free_module(index)
        for degree in range(5):
            homology = oracle.complex_homology(
                middle, resolution.differential(index + 1), resolution.differential(index), degree
            )
            assert homology == 0, (index, degree)
    assert [oracle.complex_homology(resolution.base, resolution.differential(1), None, d) for d in range(3)] == [
        1,
        0,
        0,
    ]


def test_hom_cohomology_counts_socle(oracle: DegreewiseOracle) -> None:
    """Hom(k の分解, R) の 0 次コホモロジーが k[x,y]/(x^2, y^2) の台座 xy を数えることを検証する。"""
    x, y = build_ring(("x", "y")).gens()
    ring = build_ring(("x", "y"), ideal=[x**2, y**2])
    resolution = InvariantCalculator().resolution(residue_field(ring), 1)
    ambient, relations = oracle.cokernel_hom_data(ring_module(ring))

    values = [
        oracle.hom_cohomology(resolution.base, resolution.differential(1), None, ambient, relations, d)
        for d in range(4)
    ]
    assert values == [0, 0, 1, 0]
