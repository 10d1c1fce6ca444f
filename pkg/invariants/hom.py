from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from algebra.polynomials import Polynomial
from algebra.ring import RingDescriptor
from exceptions import InvariantDomainError
from groebner.engine import GroebnerEngine
from groebner.vectors import FreeModule, Vec, VectorElem
from modcat.matrix import GradedMatrix
from modcat.module import SubquotientModule
from modcat.presentation import MinimalPresentation, kernel_and_homology
from resolve.resolution import FreeResolution


@dataclass(frozen=True, eq=False)
class HomTarget:
    """Hom(-, N) の第2引数 N = coker(P) の表示。

    Attributes:
        ring (RingDescriptor): N の環。
        degrees (Tuple[int, ...]): N の生成元の次数 b_k。
        relations (Tuple[VectorElem, ...]): P の列 (FreeModule(ring, degrees) の元)。
    """

    ring: RingDescriptor
    degrees: Tuple[int, ...]
    relations: Tuple[VectorElem, ...] = ()

    @classmethod
    def from_presentation(cls, presentation: MinimalPresentation) -> "HomTarget":
        matrix = presentation.matrix
        return cls(matrix.ring, matrix.target.degrees, tuple(c for c in matrix.columns if not c.is_zero))

    @classmethod
    def free(cls, ring: RingDescriptor, degree: int = 0) -> "HomTarget":
        """階数1の自由加群 R(-degree)。"""
        return cls(ring, (degree,))

    @property
    def rank(self) -> int:
        return len(self.degrees)


def hom_free(module: FreeModule, target: HomTarget) -> FreeModule:
    """Hom(⊕ R(-a_j), N) = ⊕_j N(a_j) の ambient。位置 (j, k) の次数は b_k - a_j。"""
    degrees = tuple(b - a for a in module.degrees for b in target.degrees)
    return FreeModule(target.ring, degrees)


def hom_relations(module: FreeModule, target: HomTarget, ambient: FreeModule) -> List[VectorElem]:
    """各ブロック j に N の関係式を置いた元。"""
    rank = target.rank
    result = []
    for j in range(module.rank):
        for relation in target.relations:
            result.append(
                VectorElem(ambient, {j * rank + k: f for k, f in relation.components.items()})
            )
    return result


def hom_map(
    differential: GradedMatrix, target: HomTarget, source_hom: FreeModule, target_hom: FreeModule
) -> GradedMatrix:
    """d: F_{i+1} -> F_i から誘導される Hom(F_i, N) -> Hom(F_{i+1}, N)。

    成分 d[j][l] はブロック (j, k) を (l, k) へ送る。
    """
    rank = target.rank
    rows: Dict[int, Dict[int, Polynomial]] = {}
    for l, column in enumerate(differential.columns):
        for j, entry in column.components.items():
            rows.setdefault(j, {})[l] = entry
    columns = []
    for j in range(differential.target.rank):
        row = rows.get(j, {})
        for k in range(rank):
            components: Vec = {l * rank + k: entry for l, entry in row.items()}
            columns.append(VectorElem(target_hom, components))
    return GradedMatrix(source_hom, target_hom, tuple(columns))


def hom_homology(
    resolution: FreeResolution,
    target: HomTarget,
    index: int,
    engine: Optional[GroebnerEngine] = None,
    check_complex: bool = False,
) -> SubquotientModule:
    """Hom(F_•, N) の index 番目のコホモロジー (= Ext^index(M, N)) を返す。

    Raises:
        InvariantDomainError: 分解が index + 1 段まで計算されていない場合。
    """
    if index < 0:
        raise InvariantDomainError(f"Ext の次数が負です: {index}")
    if index + 1 > resolution.steps and not resolution.complete:
        raise InvariantDomainError(f"分解が {index + 1} 段まで計算されていません。")
    current = resolution.free_module(index)
    following = resolution.free_module(index + 1)
    current_hom = hom_free(current, target)
    following_hom = hom_free(following, target)

    if following.rank:
        d_lo = hom_map(resolution.differential(index + 1), target, current_hom, following_hom)
    else:
        d_lo = GradedMatrix.zero(current_hom, following_hom)
    if index > 0 and current.rank:
        previous_hom = hom_free(resolution.free_module(index - 1), target)
        d_hi = hom_map(resolution.differential(index), target, previous_hom, current_hom)
    else:
        d_hi = GradedMatrix.zero(FreeModule(target.ring, ()), current_hom)

    return kernel_and_homology(
        d_hi,
        d_lo,
        lower_relations=hom_relations(following, target, following_hom),
        middle_relations=hom_relations(current, target, current_hom),
        engine=engine,
        check_complex=check_complex,
    )
