from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from algebra.polynomials import Polynomial
from algebra.ring import RingDescriptor
from exceptions import HomogeneityError, StructuralError
from groebner.engine import reduce_modulo_ideal
from groebner.vectors import FreeModule, Vec, VectorElem, vec_add, vec_scale


@dataclass(frozen=True, eq=False)
class GradedMatrix:
    """次数付き自由加群の間の斉次写像 source -> target。列 j は e_j の像。"""

    source: FreeModule
    target: FreeModule
    columns: Tuple[VectorElem, ...]

    def __post_init__(self) -> None:
        if len(self.columns) != self.source.rank:
            raise StructuralError(f"列数 {len(self.columns)} が始域の階数 {self.source.rank} と一致しません。")
        for index, column in enumerate(self.columns):
            if column.module.degrees != self.target.degrees:
                raise StructuralError("列が終域の自由加群に属していません。")
            degree = column.degree
            if degree is not None and degree != self.source.degrees[index]:
                raise HomogeneityError(
                    f"列 {index} の次数 {degree} が始域の基底次数 {self.source.degrees[index]} と一致しません。"
                )

    @classmethod
    def from_columns(
        cls, target: FreeModule, columns: Sequence[VectorElem], degrees: Optional[Sequence[int]] = None
    ) -> "GradedMatrix":
        """列から行列を作る。零列を含む場合は次数を与える。"""
        if degrees is None:
            inferred: List[int] = []
            for column in columns:
                degree = column.degree
                if degree is None:
                    raise StructuralError("零列の次数を推定できません。")
                inferred.append(degree)
            degrees = inferred
        source = FreeModule(target.ring, tuple(degrees))
        return cls(source, target, tuple(VectorElem(target, dict(c.components)) for c in columns))

    @classmethod
    def identity(cls, module: FreeModule) -> "GradedMatrix":
        return cls(module, module, tuple(module.basis_vector(i) for i in range(module.rank)))

    @classmethod
    def zero(cls, source: FreeModule, target: FreeModule) -> "GradedMatrix":
        return cls(source, target, tuple(target.zero() for _ in range(source.rank)))

    @property
    def ring(self) -> RingDescriptor:
        return self.target.ring

    @property
    def shape(self) -> Tuple[int, int]:
        return self.target.rank, self.source.rank

    def entry(self, row: int, column: int) -> Polynomial:
        return self.columns[column].get(row)

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.columns)

    def apply(self, vector: VectorElem) -> VectorElem:
        """source の元の像を返す。"""
        if vector.module.degrees != self.source.degrees:
            raise StructuralError("始域に属さない元には作用できません。")
        image: Vec = {}
        for index, coefficient in vector.components.items():
            image = vec_add(image, vec_scale(self.columns[index].components, coefficient))
        return VectorElem(self.target, reduce_modulo_ideal(image, self.ring))

    def compose(self, inner: "GradedMatrix") -> "GradedMatrix":
        """self ∘ inner を返す。"""
        if inner.target.degrees != self.source.degrees:
            raise StructuralError("合成できない行列です。")
        return GradedMatrix(inner.source, self.target, tuple(self.apply(c) for c in inner.columns))

    def with_ring(self, ring: RingDescriptor) -> "GradedMatrix":
        """同じ成分を別の環 (S または R) 上の行列として読み替える。"""
        target = self.target.with_ring(ring)
        return GradedMatrix(
            self.source.with_ring(ring),
            target,
            tuple(VectorElem(target, reduce_modulo_ideal(c.components, ring)) for c in self.columns),
        )

    def rows(self) -> List[List[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.source.rank)] for i in range(self.target.rank)]


def matrix_from_rows(
    ring: RingDescriptor,
    rows: Sequence[Sequence[Polynomial]],
    target_degrees: Sequence[int],
    source_degrees: Sequence[int],
) -> GradedMatrix:
    """行のリストから行列を作る。"""
    target = FreeModule(ring, tuple(target_degrees))
    source = FreeModule(ring, tuple(source_degrees))
    columns = []
    for j in range(source.rank):
        columns.append(target.vector({i: rows[i][j] for i in range(target.rank)}))
    return GradedMatrix(source, target, tuple(columns))
