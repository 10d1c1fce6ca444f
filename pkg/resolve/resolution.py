from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from algebra.ring import RingDescriptor
from exceptions import EngineAssertionError, InvariantDomainError
from groebner.engine import GroebnerEngine
from groebner.vectors import FreeModule
from modcat.matrix import GradedMatrix
from modcat.module import SubquotientModule
from modcat.presentation import minimal_generators, minimal_presentation


@dataclass(frozen=True, eq=False)
class FreeResolution:
    """極小自由分解 ... -> F_2 -> F_1 -> F_0 -> M -> 0。

    `differentials[i]` は d_{i+1}: F_{i+1} -> F_i。
    """

    base: FreeModule
    differentials: Tuple[GradedMatrix, ...]
    minimal: bool = True
    complete: bool = False

    @property
    def ring(self) -> RingDescriptor:
        return self.base.ring

    @property
    def tag(self) -> str:
        return self.ring.tag

    @property
    def steps(self) -> int:
        return len(self.differentials)

    def free_module(self, index: int) -> FreeModule:
        """F_index を返す。計算範囲外で完全な分解なら零加群。"""
        if index < 0:
            raise InvariantDomainError(f"ホモロジー次数が負です: {index}")
        if index == 0:
            return self.base
        if index <= self.steps:
            return self.differentials[index - 1].source
        if self.complete:
            return FreeModule(self.ring, ())
        raise InvariantDomainError(f"分解は {self.steps} 段までしか計算されていません: {index}")

    def differential(self, index: int) -> GradedMatrix:
        """d_index: F_index -> F_{index-1}。範囲外は零写像。"""
        if 1 <= index <= self.steps:
            return self.differentials[index - 1]
        return GradedMatrix.zero(self.free_module(index), self.free_module(index - 1) if index >= 1 else self.base)

    def ranks(self) -> List[int]:
        return [self.free_module(i).rank for i in range(self.steps + 1)]

    @property
    def length(self) -> int:
        """零でない最後の F_i の番号。零加群は -1。"""
        ranks = self.ranks()
        last = -1
        for index, rank in enumerate(ranks):
            if rank:
                last = index
        return last

    def truncated(self, steps: int) -> "FreeResolution":
        if steps >= self.steps:
            return self
        return replace(self, differentials=self.differentials[:steps], complete=False)


def minimal_free_resolution(
    module: SubquotientModule,
    max_steps: int,
    engine: Optional[GroebnerEngine] = None,
    logger: Optional[logging.Logger] = None,
) -> FreeResolution:
    """極小自由分解を max_steps 段まで、または完結するまで計算する。

    Args:
        module (SubquotientModule): 対象の加群。
        max_steps (int): 計算する微分の最大個数。
        engine (Optional[GroebnerEngine]): 使用するエンジン。
        logger (Optional[logging.Logger]): ロガー。

    Returns:
        FreeResolution: 極小自由分解。

    Raises:
        InvariantDomainError: max_steps が負の場合。
        EngineAssertionError: 多項式環上で長さが変数の個数を超えた場合。
    """
    if max_steps < 0:
        raise InvariantDomainError(f"段数は0以上でなければなりません: {max_steps}")
    log = logger or logging.getLogger("halg.resolve")
    engine = engine or GroebnerEngine(logger=logging.getLogger("halg.groebner"))
    ring = module.ring

    presentation = minimal_presentation(module, engine=engine)
    base = presentation.matrix.target
    if base.rank == 0:
        return FreeResolution(base, (), True, True)

    differentials: List[GradedMatrix] = []
    complete = current_is_last = presentation.matrix.source.rank == 0
    current = presentation.matrix
    while not current_is_last and len(differentials) < max_steps:
        differentials.append(current)
        if not ring.is_quotient and len(differentials) > ring.num_variables:
            raise EngineAssertionError("多項式環上の極小分解が変数の個数より長くなりました。")
        if len(differentials) == max_steps:
            break
        kernel = engine.kernel_over_quotient(list(current.columns), current.source, current.target)
        generators = minimal_generators(kernel, current.source, engine=engine)
        current = GradedMatrix.from_columns(current.source, generators)
        log.debug("分解 %d 段目: 階数 %d", len(differentials), current.source.rank)
        if current.source.rank == 0:
            complete = current_is_last = True

    return FreeResolution(base, tuple(differentials), True, complete)
