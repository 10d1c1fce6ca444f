from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from exceptions import EngineAssertionError
from invariants.calculator import InvariantCalculator
from invariants.predicates import ModuleFlags, predicates
from modcat.hilbert import INFINITE
from modcat.module import SubquotientModule


@dataclass(frozen=True)
class ModuleProfile:
    """加群の不変量のまとめ。betti / bass は 0..bound の総和。"""

    depth: float
    dimension: float
    betti: Tuple[int, ...]
    bass: Tuple[int, ...]
    type_value: int
    flags: ModuleFlags
    bound: int

    def summary(self) -> str:
        def fmt(value: float) -> str:
            if value == INFINITE:
                return "inf"
            if value == -INFINITE:
                return "-inf"
            return str(int(value))

        return (
            f"g={fmt(self.depth)} t={fmt(self.dimension)} type={self.type_value} "
            f"betti={list(self.betti)} bass={list(self.bass)}"
        )


def module_profile(
    module: SubquotientModule,
    calculator: InvariantCalculator,
    bound: Optional[int] = None,
    equidimensional: Optional[bool] = None,
) -> ModuleProfile:
    """加群の不変量をまとめて計算する。

    Raises:
        EngineAssertionError: Bass 数の構造 (μ^j = 0 for j < g, μ^g = type) が崩れた場合。
    """
    window = bound if bound is not None else calculator.default_bound(module.ring)
    g, t = calculator.depth_and_dim(module)
    betti = calculator.betti_numbers(module, window)
    bass = calculator.bass_numbers(module, window)
    type_value = calculator.type_of(module)
    if g != INFINITE and g <= window:
        if any(bass[: int(g)]) or bass[int(g)] != type_value or type_value < 1:
            raise EngineAssertionError(f"Bass 数 {bass} が深さ {g} と型 {type_value} に整合しません。")
    return ModuleProfile(
        depth=g,
        dimension=t,
        betti=tuple(betti),
        bass=tuple(bass),
        type_value=type_value,
        flags=predicates(module, calculator, equidimensional),
        bound=window,
    )
