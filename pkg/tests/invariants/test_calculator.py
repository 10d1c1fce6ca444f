from __future__ import annotations

from math import comb
from pathlib import Path
from typing import Tuple

import pytest

from algebra.monomials import TermOrder
from algebra.ring import RingDescriptor
from corpus_io.parser import collect_corpus_files, parse_file
from exceptions import InvariantDomainError
from groebner.quotient import build_ring
from invariants.calculator import InvariantCalculator, residue_field, ring_module
from modcat.hilbert import INFINITE, MINUS_INFINITY
from modcat.matrix import matrix_from_rows
from modcat.module import cokernel, zero_module


@pytest.fixture()
def calculator() -> InvariantCalculator:
    return InvariantCalculator(debug=True)


@pytest.fixture()
def non_cm_ring(plane: RingDescriptor) -> RingDescriptor:
    x, y = plane.gens()
    return build_ring(("x", "y"), ideal=[x**2, x * y])


def test_polynomial_ring_invariants(calculator: InvariantCalculator, plane: RingDescriptor) -> None:
    """S = k[x,y] の深さ・次元・Bass 数・型を検証する。"""
    module = ring_module(plane)

    assert calculator.depth_and_dim(module) == (2, 2)
    assert calculator.betti_numbers(module, 3) == [1, 0, 0, 0]
    assert calculator.bass_numbers(module, 3) == [0, 0, 1, 0]
    assert calculator.type_of(module) == 1
    assert calculator.default_bound(plane) == 2 + 2 + 4


def test_residue_field_over_polynomial_ring(calculator: InvariantCalculator, plane: RingDescriptor) -> None:
    """S 上の k の Betti 数と Bass 数がともに 1, 2, 1 であることを検証する。"""
    field = residue_field(plane)

    assert calculator.depth_and_dim(field) == (0, 0)
    assert calculator.betti_numbers(field, 3) == [1, 2, 1, 0]
    assert calculator.bass_numbers(field, 2) == [1, 2, 1]
    # メモ済みの値から短い要求に答えることを確認する。
    assert calculator.bass_numbers(field, 1) == [1, 2]


def test_non_cm_ring_invariants(calculator: InvariantCalculator, non_cm_ring: RingDescriptor) -> None:
    """R = k[x,y]/(x^2, xy) の深さ 0、次元 1、型 1 を検証する。"""
    module = ring_module(non_cm_ring)

    assert calculator.depth_and_dim(module) == (0, 1)
    assert calculator.type_of(module) == 1
    assert calculator.ring_depth(non_cm_ring) == 0
    assert calculator.ring_dimension(non_cm_ring) == 1


def test_deficiency_family_of_non_cm_ring(calculator: InvariantCalculator, non_cm_ring: RingDescriptor) -> None:
    """K^0(R) が長さ 1、標準加群 K^1(R) が次元 1 であることを検証する。"""
    family = calculator.deficiency_family(ring_module(non_cm_ring))

    assert family.indices() == [0, 1]
    assert calculator.length(family.modules[0]) == 1
    assert family.canonical is family.get(1)
    assert calculator.dimension(family.canonical) == 1


def test_deficiency_of_cm_module_vanishes_below_dimension(
    calculator: InvariantCalculator, plane: RingDescriptor
) -> None:
    """CM 加群 S/(x) では K^0 = 0 で、K^1 が次元 1 であることを検証する。"""
    x, _ = plane.gens()
    line = cokernel(matrix_from_rows(plane, [[x]], [0], [1]))

    assert calculator.is_zero(calculator.deficiency_module(line, 0))
    canonical = calculator.deficiency_module(line, 1)
    assert calculator.dimension(canonical) == 1
    # K(S/(x)) ≅ (S/(x))(-1) の Hilbert 関数は 0, 1, 1, ... となることを確認する。
    assert calculator.hilbert(canonical).values(range(3)) == [0, 1, 1]


def test_deficiency_index_out_of_range(calculator: InvariantCalculator, plane: RingDescriptor) -> None:
    """範囲外の番号や零加群では InvariantDomainError になることを検証する。"""
    with pytest.raises(InvariantDomainError):
        calculator.deficiency_module(residue_field(plane), 1)
    with pytest.raises(InvariantDomainError):
        calculator.deficiency_module(zero_module(plane), 0)


def test_zero_module_conventions(calculator: InvariantCalculator, plane: RingDescriptor) -> None:
    """零加群の深さは inf、次元は -inf、型は 0 であることを検証する。"""
    zero = zero_module(plane)

    assert calculator.depth_and_dim(zero) == (INFINITE, MINUS_INFINITY)
    assert calculator.type_of(zero) == 0
    assert calculator.bass_numbers(zero, 2) == [0, 0, 0]
    assert calculator.deficiency_family(zero).canonical is None


def test_ext_requires_same_ring(
    calculator: InvariantCalculator, plane: RingDescriptor, non_cm_ring: RingDescriptor
) -> None:
    """異なる環上の Ext は拒否することを検証する。"""
    with pytest.raises(InvariantDomainError):
        calculator.ext_module(residue_field(plane), residue_field(non_cm_ring), 0)


def test_koszul_depth_agrees_with_resolution(calculator: InvariantCalculator, plane: RingDescriptor) -> None:
    """Koszul ホモロジーによる深さが分解による深さと一致することを検証する。"""
    x, _ = plane.gens()
    line = cokernel(matrix_from_rows(plane, [[x]], [0], [1]))

    assert calculator.koszul_depth(line) == calculator.depth(line) == 1
    assert calculator.koszul_depth(residue_field(plane)) == 0


def test_artinian_gorenstein_ring(calculator: InvariantCalculator) -> None:
    """k[x,y]/(x^2, y^2) は深さ 0、型 1 で、Bass 数 μ^0 = 1 を持つことを検証する。"""
    x, y = build_ring(("x", "y")).gens()
    ring = build_ring(("x", "y"), ideal=[x**2, y**2])
    module = ring_module(ring)

    assert calculator.depth_and_dim(module) == (0, 0)
    assert calculator.bass_numbers(module, 2) == [1, 0, 0]
    assert calculator.type_of(module) == 1
    assert calculator.length(module) == 4
    assert calculator.betti_numbers(residue_field(ring), 3) == [1, 2, 3, 4]


CORPUS_FILES = collect_corpus_files([Path(__file__).resolve().parents[2] / "corpus"])


def _free_hilbert(degrees: Tuple[int, ...], nvars: int, degree: int) -> int:
    return sum(comb(degree - shift + nvars - 1, nvars - 1) for shift in degrees if degree >= shift)


@pytest.mark.parametrize("path", CORPUS_FILES, ids=lambda path: path.stem)
def test_euler_characteristic_of_s_resolutions(calculator: InvariantCalculator, path: Path) -> None:
    """コーパスの各加群で Σ(-1)^i H(F_i) = H(M) が S 上の極小分解について成り立つことを検証する。"""
    for entry in parse_file(path):
        module = entry.module
        resolution = calculator.s_resolution(module)
        s = module.ring.num_variables
        degrees = range(-1, 8)
        alternating = [
            sum(
                (-1) ** i * _free_hilbert(resolution.free_module(i).degrees, s, d)
                for i in range(resolution.length + 1)
            )
            for d in degrees
        ]
        assert alternating == calculator.hilbert(module).values(degrees), entry.key


@pytest.mark.parametrize("path", CORPUS_FILES, ids=lambda path: path.stem)
def test_betti_tables_do_not_depend_on_term_order(path: Path) -> None:
    """degrevlex と lex で読んだ同じ加群の次数付き Betti 表が一致することを検証する。"""
    graded = InvariantCalculator()
    lexicographic = InvariantCalculator()
    pairs = zip(parse_file(path), parse_file(path, order=TermOrder.LEX))
    for entry, relisted in pairs:
        assert relisted.module.ring.order is TermOrder.LEX
        expected = graded.betti_table(entry.module, 3).entries
        assert lexicographic.betti_table(relisted.module, 3).entries == expected, entry.key
