from __future__ import annotations

import pytest

from algebra.ring import RingDescriptor
from exceptions import ContractViolation, InvariantDomainError
from groebner.quotient import build_ring
from modcat.matrix import matrix_from_rows
from modcat.module import SubquotientModule, cokernel
from resolve.betti import BettiTable, betti_table
from resolve.cache import ResolutionCache
from resolve.resolution import FreeResolution, minimal_free_resolution


def _residue_field(ring: RingDescriptor) -> SubquotientModule:
    gens = ring.gens()
    return cokernel(matrix_from_rows(ring, [list(gens)], [0], [1] * len(gens)))


def test_koszul_resolution_of_residue_field() -> None:
    """S = k[x,y] 上の k の Betti 数が 1, 2, 1 であることを検証する。"""
    plane = build_ring(("x", "y"))
    resolution = minimal_free_resolution(_residue_field(plane), 6)
    table = betti_table(resolution)

    assert resolution.complete
    assert resolution.length == 2
    assert table.totals == [1, 2, 1]
    assert table.graded(1, 1) == 2
    assert table.graded(2, 2) == 1
    # 完結した分解の先は 0 になることを確認する。
    assert table.total(5) == 0


def test_infinite_resolution_over_hypersurface() -> None:
    """k[x]/(x^2) 上の k は無限に続く分解を持つことを検証する。"""
    x = build_ring(("x",)).gens()[0]
    ring = build_ring(("x",), ideal=[x**2])
    resolution = minimal_free_resolution(_residue_field(ring), 4)
    table = betti_table(resolution)

    assert not resolution.complete
    assert table.totals == [1, 1, 1, 1, 1]
    assert [table.graded(i, i) for i in range(5)] == [1, 1, 1, 1, 1]
    with pytest.raises(ContractViolation):
        table.total(7)


def test_truncated_resolution_is_incomplete() -> None:
    """段数を打ち切ると complete が False になることを検証する。"""
    plane = build_ring(("x", "y"))
    resolution = minimal_free_resolution(_residue_field(plane), 1)

    assert resolution.steps == 1
    assert not resolution.complete
    with pytest.raises(InvariantDomainError):
        resolution.free_module(3)
    with pytest.raises(InvariantDomainError):
        minimal_free_resolution(_residue_field(plane), -1)


def test_betti_table_rejects_non_minimal_resolution() -> None:
    """極小でない分解から Betti 表を作らないことを検証する。"""
    plane = build_ring(("x", "y"))
    resolution = minimal_free_resolution(_residue_field(plane), 3)
    non_minimal = FreeResolution(resolution.base, resolution.differentials, minimal=False, complete=True)
    with pytest.raises(ContractViolation):
        betti_table(non_minimal)


def test_betti_table_shift_and_render() -> None:
    """ひねりで内部次数がずれ、表形式で描画できることを検証する。"""
    table = BettiTable({(0, 0): 1, (1, 1): 2, (2, 2): 1}, steps=2)
    shifted = table.shifted(1)

    assert shifted.graded(1, 0) == 2
    assert shifted.totals == [1, 2, 1]
    rendered = table.render()
    assert rendered.splitlines()[-1].split() == ["total:", "1", "2", "1"]


def test_resolution_cache_reuses_longer_resolution() -> None:
    """長い分解を計算済みなら短い要求をキャッシュから返すことを検証する。"""
    plane = build_ring(("x", "y"))
    cache = ResolutionCache()
    module = _residue_field(plane)

    first = cache.resolve(module, 5)
    second = cache.resolve(_residue_field(plane), 2)

    assert (cache.misses, cache.hits) == (1, 1)
    assert len(cache) == 1
    assert betti_table(second).totals == betti_table(first).totals[:3]

    cache.clear()
    assert len(cache) == 0
    assert cache.hits == 0
