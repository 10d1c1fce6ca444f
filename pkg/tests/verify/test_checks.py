from __future__ import annotations

from typing import Optional, Tuple

import pytest

from groebner.quotient import build_ring
from invariants.calculator import InvariantCalculator, ring_module
from modcat.matrix import matrix_from_rows
from modcat.module import SubquotientModule, cokernel, zero_module
from verify.checks import (
    ALL_CHECKS,
    ZERO_MODULE_NOTE,
    CheckContext,
    check_bass_bounds,
    check_betti_bounds,
    check_ci_characterization,
    check_finiteness_transfer,
    check_foxby_cm,
    check_schenzel_bounds,
    check_tail_equalities,
    explore_questions,
)
from verify.outcome import Status, Window


@pytest.fixture()
def calculator() -> InvariantCalculator:
    return InvariantCalculator()


def _context(
    module: SubquotientModule,
    calculator: InvariantCalculator,
    *,
    equidimensional: Optional[bool] = None,
    serre_k: Optional[int] = None,
) -> CheckContext:
    return CheckContext("test:m", module, calculator, bound=2, equidimensional=equidimensional, serre_k=serre_k)


def _line() -> SubquotientModule:
    plane = build_ring(("x", "y"))
    x, _ = plane.gens()
    return cokernel(matrix_from_rows(plane, [[x]], [0], [1]))


def _mixed() -> SubquotientModule:
    plane = build_ring(("x", "y"))
    x, y = plane.gens()
    return cokernel(matrix_from_rows(plane, [[x**2, x * y]], [0], [2, 2]))


def test_registered_checks() -> None:
    """8つの検査が登録されていることを検証する。"""
    assert list(ALL_CHECKS) == ["schenzel", "bass", "betti", "foxby", "gcm", "tail", "finiteness", "ci"]


def test_schenzel_with_serre_condition(calculator: InvariantCalculator) -> None:
    """S/(x) が次元の上界と S_1 を満たすことを検証する。"""
    outcome = check_schenzel_bounds(_context(_line(), calculator, equidimensional=True, serre_k=1))

    assert outcome.status is Status.PASS
    assert outcome.window == Window(0, 1)
    assert "Serre 条件の最大値: 1" in outcome.notes


def test_schenzel_without_serre_condition(calculator: InvariantCalculator) -> None:
    """CM でない S/(x^2, xy) でも次元の上界は成り立つことを検証する。"""
    assert check_schenzel_bounds(_context(_mixed(), calculator)).status is Status.PASS


def test_schenzel_checks_double_dual_under_s2(calculator: InvariantCalculator) -> None:
    """S_2 を満たす S では CM の同値と K(K(M)) ≅ M が成り立つことを検証する。"""
    outcome = check_schenzel_bounds(_context(ring_module(build_ring(("x", "y"))), calculator))

    assert outcome.status is Status.PASS
    assert any(note.startswith("S_2 での K(K(M)) と M: ") for note in outcome.notes)
    assert not any("等次元性が不明" in note for note in outcome.notes)


def test_schenzel_cm_equivalence_on_non_equidimensional_ring(calculator: InvariantCalculator) -> None:
    """等次元でない k[x,y,z]/(xz, yz) では CM の同値の両辺がともに偽になることを検証する。"""
    x, y, z = build_ring(("x", "y", "z")).gens()
    ring = build_ring(("x", "y", "z"), ideal=[x * z, y * z])
    outcome = check_schenzel_bounds(_context(ring_module(ring), calculator))

    assert outcome.status is Status.PASS
    assert not any("K(K(M))" in note for note in outcome.notes)


@pytest.mark.parametrize(
    ("variables", "square"),
    [(("x",), True), (("x",), False), (("x", "y"), False), (("x", "y", "z"), False)],
)
def test_betti_refinement_for_each_dimension(
    calculator: InvariantCalculator, variables: Tuple[str, ...], square: bool
) -> None:
    """t = 0, 1, 2, 3 の各場合で β と μ(K(M)) の差の関係が成り立つことを検証する。"""
    x = build_ring(variables).gens()[0]
    ring = build_ring(variables, ideal=[x**2] if square else [])
    outcome = check_betti_bounds(_context(ring_module(ring), calculator))

    assert outcome.status is Status.PASS
    assert outcome.window == Window(0, 2)


def test_betti_refinement_on_line(calculator: InvariantCalculator) -> None:
    """t = 1 の S/(x) で β_1 - β_0 >= μ^2(K) - μ^1(K) - μ^0(K^0) が成り立つことを検証する。"""
    assert check_betti_bounds(_context(_line(), calculator)).status is Status.PASS


def test_bass_bounds_on_polynomial_ring(calculator: InvariantCalculator) -> None:
    """S 自身で Bass 数の上界と型の等式が成り立つことを検証する。"""
    outcome = check_bass_bounds(_context(ring_module(build_ring(("x", "y"))), calculator))

    assert outcome.status is Status.PASS
    assert outcome.window == Window(0, 2)
    assert "参考 (CM かつ pd 有限): β_1(M) = 0, β_2(M) = 0" in outcome.notes
    assert "参考 (id 有限): β_0(K^(g+1)(M)) = 0, β_2(K^g(M)) - β_1(K^g(M)) = 0" in outcome.notes


def test_foxby_on_cm_module(calculator: InvariantCalculator) -> None:
    """CM 加群 S/(x) で Betti 数と Bass 数の入れ替わりが成り立つことを検証する。"""
    outcome = check_foxby_cm(_context(_line(), calculator))

    assert outcome.status is Status.PASS
    assert any("M と K(K(M))" in note for note in outcome.notes)


def test_foxby_skips_without_hypothesis(calculator: InvariantCalculator) -> None:
    """K^0 が深さ0の場合は理由を付けて飛ばすことを検証する。"""
    outcome = check_foxby_cm(_context(_mixed(), calculator))

    assert outcome.status is Status.SKIP
    assert outcome.notes == ("depth K^0(M) = 0 です。",)


def test_tail_degenerates_for_cm_module(calculator: InvariantCalculator) -> None:
    """g = t の場合は2本の不足加群の等式が自明として扱われることを検証する。"""
    outcome = check_tail_equalities(_context(ring_module(build_ring(("x", "y"))), calculator))

    assert outcome.status is Status.PASS
    assert any("g = t" in note for note in outcome.notes)


def test_finiteness_on_free_module(calculator: InvariantCalculator) -> None:
    """S 上の自由加群は id / pd 有限で自由と判定されることを検証する。"""
    outcome = check_finiteness_transfer(_context(ring_module(build_ring(("x", "y"))), calculator))

    assert outcome.status is Status.PASS
    assert outcome.window == Window(2, 2)


@pytest.mark.parametrize("hypersurface", [False, True])
def test_ci_characterization_on_hypersurfaces(calculator: InvariantCalculator, hypersurface: bool) -> None:
    """正則環と超曲面で完全交叉の特徴付けが成り立つことを検証する。"""
    x = build_ring(("x",)).gens()[0]
    ring = build_ring(("x",), ideal=[x**2] if hypersurface else [])
    outcome = check_ci_characterization(_context(ring_module(ring), calculator))

    assert outcome.status is Status.PASS
    assert outcome.window == Window(0, 2)


def test_zero_module_is_skipped(calculator: InvariantCalculator) -> None:
    """零加群では各検査と問いの探索を飛ばすことを検証する。"""
    context = _context(zero_module(build_ring(("x", "y"))), calculator)

    for check in (check_schenzel_bounds, check_bass_bounds, check_tail_equalities):
        outcome = check(context)
        assert outcome.status is Status.SKIP
        assert outcome.notes == (ZERO_MODULE_NOTE,)
    assert [o.status for o in explore_questions(context)] == [Status.SKIP, Status.SKIP]


def test_questions_agree_on_polynomial_ring(calculator: InvariantCalculator) -> None:
    """S 上では2つの問いの両辺が一致することを検証する。"""
    outcomes = explore_questions(_context(ring_module(build_ring(("x", "y"))), calculator))

    assert [o.check_id for o in outcomes] == ["question1", "question2"]
    assert all(o.status is Status.AGREE for o in outcomes)
    assert outcomes[0].witnesses[0].label == "id M < ∞"
