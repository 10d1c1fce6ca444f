from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from algebra.ring import RingDescriptor, format_polynomial
from exceptions import StructuralError
from groebner.vectors import FreeModule, VectorElem
from modcat.matrix import GradedMatrix


@dataclass(frozen=True, eq=False)
class SubquotientModule:
    """(im generators + im relations) / im relations ⊂ ambient / im relations で表す有限表示加群。

    剰余環上の加群では I・ambient も暗黙に関係式として扱う。
    """

    ambient: FreeModule
    generators: GradedMatrix
    relations: GradedMatrix

    def __post_init__(self) -> None:
        if self.generators.target.degrees != self.ambient.degrees:
            raise StructuralError("生成元の終域が ambient と一致しません。")
        if self.relations.target.degrees != self.ambient.degrees:
            raise StructuralError("関係式の終域が ambient と一致しません。")

    @property
    def ring(self) -> RingDescriptor:
        return self.ambient.ring

    @property
    def tag(self) -> str:
        return self.ring.tag

    @property
    def generator_degrees(self) -> Tuple[int, ...]:
        return self.generators.source.degrees

    @property
    def num_generators(self) -> int:
        return self.generators.source.rank

    def generator_vectors(self) -> List[VectorElem]:
        return list(self.generators.columns)

    def relation_vectors(self) -> List[VectorElem]:
        return [c for c in self.relations.columns if not c.is_zero]

    def over(self, ring: RingDescriptor) -> "SubquotientModule":
        """同じ表示を別の環上の加群として読み替える (S 持ち上げや R への戻し)。"""
        return SubquotientModule(
            self.ambient.with_ring(ring),
            self.generators.with_ring(ring),
            self.relations.with_ring(ring),
        )

    def lift(self) -> "SubquotientModule":
        """S 上の加群 (関係式に I・ambient を加えたもの) を返す。"""
        ring = self.ring
        if not ring.is_quotient:
            return self
        ambient = self.ambient.with_ring(ring.ambient)
        extra = [VectorElem(ambient, {p: f}) for p in range(ambient.rank) for f in ring.ideal_basis]
        columns = [VectorElem(ambient, dict(c.components)) for c in self.relation_vectors()] + extra
        relations = GradedMatrix.from_columns(ambient, columns)
        generators = GradedMatrix.from_columns(
            ambient,
            [VectorElem(ambient, dict(c.components)) for c in self.generators.columns],
            self.generator_degrees,
        )
        return SubquotientModule(ambient, generators, relations)

    def fingerprint(self) -> str:
        """キャッシュ鍵に使う表示の指紋。"""
        digest = hashlib.sha256()
        digest.update(self.ring.describe().encode("utf-8"))
        digest.update(repr(self.ring.order.value).encode("utf-8"))
        digest.update(repr(self.ambient.degrees).encode("utf-8"))
        for label, matrix in (("G", self.generators), ("N", self.relations)):
            digest.update(label.encode("utf-8"))
            digest.update(repr(matrix.source.degrees).encode("utf-8"))
            for column in matrix.columns:
                for position, f in column.items():
                    digest.update(f"{position}:{format_polynomial(f)};".encode("utf-8"))
                digest.update(b"|")
        return digest.hexdigest()

    def describe(self) -> str:
        return (
            f"subquotient(ambient={list(self.ambient.degrees)}, "
            f"generators={self.num_generators}, relations={len(self.relation_vectors())}) over {self.tag}"
        )


def subquotient(gens: GradedMatrix, rels: GradedMatrix) -> SubquotientModule:
    """生成元と関係式の行列から部分商加群を作る。正規化は行わない。

    Raises:
        StructuralError: 終域が一致しない場合。
    """
    if gens.target.degrees != rels.target.degrees or gens.ring != rels.ring:
        raise StructuralError("生成元と関係式の終域が一致しません。")
    return SubquotientModule(gens.target, gens, rels)


def free_module_as_subquotient(ring: RingDescriptor, degrees: Sequence[int]) -> SubquotientModule:
    """自由加群 ⊕ R(-d_i) を部分商加群として返す。"""
    ambient = FreeModule(ring, tuple(degrees))
    return SubquotientModule(ambient, GradedMatrix.identity(ambient), GradedMatrix.zero(FreeModule(ring, ()), ambient))


def cokernel(matrix: GradedMatrix) -> SubquotientModule:
    """coker(matrix) を返す。"""
    ambient = matrix.target
    return SubquotientModule(ambient, GradedMatrix.identity(ambient), matrix)


def zero_module(ring: RingDescriptor) -> SubquotientModule:
    ambient = FreeModule(ring, ())
    empty = GradedMatrix.identity(ambient)
    return SubquotientModule(ambient, empty, empty)


def direct_sum(first: SubquotientModule, second: SubquotientModule) -> SubquotientModule:
    """ブロック対角の表示で直和をとる。

    Raises:
        StructuralError: 異なる環上の加群を渡した場合。
    """
    if first.ring != second.ring:
        raise StructuralError("異なる環上の加群の直和はとれません。")
    ambient = first.ambient.direct_sum(second.ambient)
    offset = first.ambient.rank

    def embed(matrix: GradedMatrix, shift: int) -> List[VectorElem]:
        return [
            VectorElem(ambient, {position + shift: f for position, f in column.components.items()})
            for column in matrix.columns
        ]

    generators = GradedMatrix.from_columns(
        ambient,
        embed(first.generators, 0) + embed(second.generators, offset),
        first.generator_degrees + second.generator_degrees,
    )
    relations = GradedMatrix.from_columns(
        ambient,
        embed(first.relations, 0) + embed(second.relations, offset),
        first.relations.source.degrees + second.relations.source.degrees,
    )
    return SubquotientModule(ambient, generators, relations)
