from __future__ import annotations

import pytest

from exceptions import ContractViolation
from groebner.quotient import build_ring
from invariants.calculator import InvariantCalculator, residue_field
from modcat.matrix import matrix_from_rows
from modcat.module import cokernel
from verify.outcome import CheckOutcome, IsoVerdict, Status, Window, Witness, iso_evidence, skipped


def test_fail_requires_witness() -> None:
    """FAIL は証拠、SKIP と UNKNOWN は理由を必須とすることを検証する。"""
    with pytest.raises(ContractViolation):
        CheckOutcome("bass", "m", Status.FAIL)
    with pytest.raises(ContractViolation):
        CheckOutcome("bass", "m", Status.SKIP)
    with pytest.raises(ContractViolation):
        CheckOutcome("bass", "m", Status.UNKNOWN)

    outcome = CheckOutcome("bass", "m", Status.FAIL, witnesses=(Witness(2, 3, 1, "μ^j(M) <= ..."),))
    assert outcome.is_failure
    assert skipped("foxby", "m", "理由").notes == ("理由",)


def test_outcome_ordering_and_notes() -> None:
    """並び順の鍵と注記の追加を検証する。"""
    outcome = CheckOutcome("tail", "b:m", Status.PASS)
    annotated = outcome.with_notes("追記")

    assert outcome.sort_key == ("b:m", "tail")
    assert annotated.notes == ("追記",)
    assert outcome.notes == ()
    assert not CheckOutcome("question1", "b:m", Status.AGREE).is_failure
    assert CheckOutcome("question1", "b:m", Status.COUNTEREXAMPLE).is_failure


def test_windows() -> None:
    """「すべての j > 閾値」を閾値 + 4 までで代用する窓を検証する。"""
    assert Window.beyond(3) == Window(4, 7)
    assert list(Window.beyond(3).indices()) == [4, 5, 6, 7]
    assert Window.beyond(-5) == Window(0, 0)
    assert Window.up_to(6) == Window(0, 6)
    assert Window(4, 7).span(Window(2, 5)) == Window(2, 7)
    assert Window(0, 2).describe() == "0 <= j <= 2"


def test_iso_evidence_finds_shift() -> None:
    """S/(x) と (S/(x))(-1) はひねり 1 で一致し、k とは一致しないことを検証する。"""
    plane = build_ring(("x", "y"))
    x, _ = plane.gens()
    calculator = InvariantCalculator()
    line = cokernel(matrix_from_rows(plane, [[x]], [0], [1]))
    twisted = cokernel(matrix_from_rows(plane, [[x]], [1], [2]))

    evidence = iso_evidence(line, twisted, calculator)
    assert evidence.verdict is IsoVerdict.CONSISTENT
    assert evidence.shift == 1

    refuted = iso_evidence(line, residue_field(plane), calculator)
    assert refuted.verdict is IsoVerdict.REFUTED
    assert not refuted.hilbert_match
