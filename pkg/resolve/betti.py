from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from exceptions import ContractViolation
from resolve.resolution import FreeResolution


@dataclass(frozen=True)
class BettiTable:
    """次数付き Betti 数 β_{i,j} と各段の総和 β_i。"""

    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    steps: int = 0
    complete: bool = True

    @property
    def totals(self) -> List[int]:
        result = [0] * (self.steps + 1) if self.entries or self.steps else []
        for (i, _), value in self.entries.items():
            result[i] += value
        return result

    def total(self, index: int) -> int:
        if index < 0:
            return 0
        totals = self.totals
        if index < len(totals):
            return totals[index]
        if self.complete:
            return 0
        raise ContractViolation(f"Betti 数は {self.steps} 段目までしか分かっていません: {index}")

    def graded(self, index: int, degree: int) -> int:
        return self.entries.get((index, degree), 0)

    def shifted(self, delta: int) -> "BettiTable":
        """M(delta) の表 (内部次数を -delta ずらす)。"""
        return BettiTable(
            {(i, j - delta): v for (i, j), v in self.entries.items()},
            self.steps,
            self.complete,
        )

    def render(self) -> str:
        """行 = j - i、列 = i の通常の表形式で返す。"""
        if not self.entries:
            return "0"
        rows = sorted({j - i for i, j in self.entries})
        header = "      " + " ".join(f"{i:>4}" for i in range(self.steps + 1))
        lines = [header]
        for row in rows:
            cells = []
            for i in range(self.steps + 1):
                value = self.entries.get((i, row + i), 0)
                cells.append(f"{value if value else '.':>4}")
            lines.append(f"{row:>4}: " + " ".join(cells))
        lines.append("total: " + " ".join(f"{v:>4}" for v in self.totals))
        return "\n".join(lines)


def betti_table(resolution: FreeResolution) -> BettiTable:
    """極小分解から Betti 表を読み取る。

    Raises:
        ContractViolation: 極小でない分解を渡した場合。
    """
    if not resolution.minimal:
        raise ContractViolation("極小でない分解から Betti 数は読み取れません。")
    for differential in resolution.differentials:
        for column in differential.columns:
            if any(f.is_ground for f in column.components.values()):
                raise ContractViolation("微分に単元成分が含まれています。")
    entries: Dict[Tuple[int, int], int] = {}
    for index in range(resolution.steps + 1):
        for degree in resolution.free_module(index).degrees:
            entries[(index, degree)] = entries.get((index, degree), 0) + 1
    steps = resolution.steps if entries else 0
    return BettiTable(entries, steps, resolution.complete)
