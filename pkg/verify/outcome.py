from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple, Union

from exceptions import ContractViolation
from invariants.calculator import InvariantCalculator
from modcat.hilbert import HilbertData
from modcat.module import SubquotientModule
from resolve.betti import BettiTable, betti_table

# 無限の深さ・次元もそのまま比較値として持つ。
Number = Union[int, float]


class Status(str, Enum):
    """検証結果の種類。AGREE / COUNTEREXAMPLE は問いの探索でのみ使う。"""

    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"
    UNKNOWN = "unknown"
    AGREE = "agree"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class Witness:
    """比較に使った (番号, 左辺, 右辺) と、どの主張かを示すラベル。"""

    index: Optional[int]
    lhs: Number
    rhs: Number
    label: str = ""


@dataclass(frozen=True)
class Window:
    """調べた番号の範囲 lower <= j <= upper。"""

    lower: int
    upper: int

    @classmethod
    def up_to(cls, bound: int) -> "Window":
        """「すべての j >= 0」を 0 <= j <= bound で代用する窓。"""
        return cls(0, bound)

    @classmethod
    def beyond(cls, threshold: int, width: int = 4) -> "Window":
        """「すべての j > threshold」を threshold < j <= threshold + width で代用する窓。"""
        return cls(max(threshold + 1, 0), max(threshold + width, 0))

    def indices(self) -> range:
        return range(self.lower, self.upper + 1)

    def span(self, other: "Window") -> "Window":
        return Window(min(self.lower, other.lower), max(self.upper, other.upper))

    def describe(self) -> str:
        return f"{self.lower} <= j <= {self.upper}"


@dataclass(frozen=True)
class CheckOutcome:
    """1つの加群に対する1つの検査の結果。

    Raises:
        ContractViolation: FAIL なのに証拠がない場合、または SKIP / UNKNOWN なのに理由がない場合。
    """

    check_id: str
    module_id: str
    status: Status
    window: Optional[Window] = None
    witnesses: Tuple[Witness, ...] = ()
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.status is Status.FAIL and not self.witnesses:
            raise ContractViolation(f"{self.check_id} の FAIL に証拠がありません。")
        if self.status in (Status.SKIP, Status.UNKNOWN) and not self.notes:
            raise ContractViolation(f"{self.check_id} の {self.status.value} に理由がありません。")

    @property
    def sort_key(self) -> Tuple[str, str]:
        return (self.module_id, self.check_id)

    @property
    def is_failure(self) -> bool:
        return self.status in (Status.FAIL, Status.COUNTEREXAMPLE)

    def with_notes(self, *notes: str) -> "CheckOutcome":
        return replace(self, notes=self.notes + tuple(notes))


def skipped(check_id: str, module_id: str, reason: str) -> CheckOutcome:
    return CheckOutcome(check_id, module_id, Status.SKIP, notes=(reason,))


class IsoVerdict(str, Enum):
    CONSISTENT = "consistent"
    REFUTED = "refuted"


@dataclass(frozen=True)
class IsoEvidence:
    """同型の数値的な証拠。Hilbert 級数と S 上の次数付き Betti 表を、共通のひねり shift で比べる。

    Attributes:
        hilbert_match (bool): 窓内のどれかのひねりで Hilbert 級数が一致したか。
        betti_table_match (bool): 窓内のどれかのひねりで Betti 表が一致したか。
        shift (Optional[int]): 両方が同時に一致したひねり。なければ None。
        verdict (IsoVerdict): shift があれば CONSISTENT。
    """

    hilbert_match: bool
    betti_table_match: bool
    shift: Optional[int]
    verdict: IsoVerdict

    def describe(self) -> str:
        if self.verdict is IsoVerdict.CONSISTENT:
            return f"同型の証拠あり (ひねり {self.shift})"
        return f"同型を否定 (Hilbert 一致={self.hilbert_match}, Betti 表一致={self.betti_table_match})"


def _max_generator_degree(module: SubquotientModule, calculator: InvariantCalculator) -> int:
    degrees = calculator.presentation(module).generator_twists
    return max((abs(d) for d in degrees), default=0)


def _graded_table(module: SubquotientModule, calculator: InvariantCalculator) -> BettiTable:
    if calculator.is_zero(module):
        return BettiTable()
    return betti_table(calculator.s_resolution(module))


def iso_evidence(
    first: SubquotientModule,
    second: SubquotientModule,
    calculator: InvariantCalculator,
    radius: Optional[int] = None,
) -> IsoEvidence:
    """first ≅ second(δ) となる δ を |δ| <= radius の範囲で探す。

    Args:
        first (SubquotientModule): 比較する加群。
        second (SubquotientModule): 比較する加群。first と同じ環上。
        calculator (InvariantCalculator): 計算器。
        radius (Optional[int]): ひねりの探索半径。省略時は s + 生成元の最大次数。

    Returns:
        IsoEvidence: 比較結果。
    """
    if radius is None:
        radius = first.ring.num_variables + max(
            _max_generator_degree(first, calculator), _max_generator_degree(second, calculator)
        )
    h_first, h_second = calculator.hilbert(first), calculator.hilbert(second)
    b_first, b_second = _graded_table(first, calculator), _graded_table(second, calculator)

    hilbert_seen = betti_seen = False
    for delta in sorted(range(-radius, radius + 1), key=lambda d: (abs(d), d)):
        hilbert_ok = h_first.same_series(h_second.shifted(delta))
        betti_ok = b_first.entries == b_second.shifted(delta).entries
        hilbert_seen |= hilbert_ok
        betti_seen |= betti_ok
        if hilbert_ok and betti_ok:
            return IsoEvidence(True, True, delta, IsoVerdict.CONSISTENT)
    return IsoEvidence(hilbert_seen, betti_seen, None, IsoVerdict.REFUTED)


def aligned_series(left: HilbertData, right: HilbertData, radius: int) -> Optional[int]:
    """left = right(δ) となる最小の |δ| を返す。なければ None。"""
    for delta in sorted(range(-radius, radius + 1), key=lambda d: (abs(d), d)):
        if left.same_series(right.shifted(delta)):
            return delta
    return None
