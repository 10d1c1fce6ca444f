from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from algebra.monomials import Monomial
from algebra.polynomials import Polynomial, poly_degree
from algebra.ring import RingDescriptor, format_polynomial
from exceptions import HomogeneityError, StructuralError

# エンジン内部の疎ベクトル表現: 位置 -> 多項式 (零成分は持たない)。
Vec = Dict[int, Polynomial]
LeadTerm = Tuple[int, Monomial, Any]


@dataclass(frozen=True)
class FreeModule:
    """次数付き自由加群 ⊕ R(-d_i)。`degrees[i]` は基底 e_i の次数。"""

    ring: RingDescriptor
    degrees: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def twists(self) -> Tuple[int, ...]:
        """R(a) 表記での捻り a (= -d_i)。"""
        return tuple(-d for d in self.degrees)

    def zero(self) -> "VectorElem":
        return VectorElem(self, {})

    def basis_vector(self, index: int) -> "VectorElem":
        if not 0 <= index < self.rank:
            raise StructuralError(f"基底の番号が範囲外です: {index}")
        return VectorElem(self, {index: self.ring.poly_ring.one})

    def vector(self, components: Mapping[int, Polynomial]) -> "VectorElem":
        """成分から斉次元を構成する。斉次性を検査する。"""
        element = VectorElem(self, {i: f for i, f in components.items() if f})
        element.degree  # 斉次性の検査
        return element

    def from_list(self, entries: Sequence[Polynomial]) -> "VectorElem":
        if len(entries) != self.rank:
            raise StructuralError(f"成分数 {len(entries)} が階数 {self.rank} と一致しません。")
        return self.vector({i: f for i, f in enumerate(entries)})

    def direct_sum(self, other: "FreeModule") -> "FreeModule":
        if other.ring != self.ring:
            raise StructuralError("異なる環上の自由加群の直和はとれません。")
        return FreeModule(self.ring, self.degrees + other.degrees)

    def shifted(self, delta: int) -> "FreeModule":
        return FreeModule(self.ring, tuple(d + delta for d in self.degrees))

    def with_ring(self, ring: RingDescriptor) -> "FreeModule":
        return FreeModule(ring, self.degrees)


@dataclass(frozen=True, eq=False)
class VectorElem:
    """自由加群の斉次元。"""

    module: FreeModule
    components: Vec

    @property
    def degree(self) -> Optional[int]:
        """元の次数 (成分次数 + 基底次数)。零ベクトルは None。

        Raises:
            HomogeneityError: 成分間で次数が揃っていない場合。
        """
        return vec_degree(self.components, self.module.degrees)

    @property
    def is_zero(self) -> bool:
        return not self.components

    def get(self, index: int) -> Polynomial:
        return self.components.get(index, self.module.ring.poly_ring.zero)

    def to_list(self) -> List[Polynomial]:
        return [self.get(i) for i in range(self.module.rank)]

    def items(self) -> Iterator[Tuple[int, Polynomial]]:
        return iter(sorted(self.components.items()))

    def _check_same(self, other: "VectorElem") -> None:
        if other.module != self.module:
            raise StructuralError("異なる自由加群の元同士は演算できません。")

    def __add__(self, other: "VectorElem") -> "VectorElem":
        self._check_same(other)
        if not self.is_zero and not other.is_zero and self.degree != other.degree:
            raise HomogeneityError(f"次数 {self.degree} と {other.degree} の元は加えられません。")
        return VectorElem(self.module, vec_add(self.components, other.components))

    def __neg__(self) -> "VectorElem":
        return VectorElem(self.module, {i: -f for i, f in self.components.items()})

    def __sub__(self, other: "VectorElem") -> "VectorElem":
        return self + (-other)

    def scale(self, factor: Polynomial) -> "VectorElem":
        """多項式倍。"""
        return VectorElem(self.module, vec_scale(self.components, factor))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorElem):
            return NotImplemented
        return self.module == other.module and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.module.degrees, tuple(sorted((i, hash(f)) for i, f in self.components.items()))))

    def __repr__(self) -> str:
        entries = ", ".join(format_polynomial(f) for f in self.to_list())
        return f"VectorElem([{entries}])"


def vec_degree(vec: Mapping[int, Polynomial], degrees: Sequence[int]) -> Optional[int]:
    result: Optional[int] = None
    for index, f in vec.items():
        d = poly_degree(f)
        if d is None:
            continue
        total = d + degrees[index]
        if result is None:
            result = total
        elif result != total:
            raise HomogeneityError(f"成分間で次数が揃っていません: {result} と {total}")
    return result


def vec_add(a: Mapping[int, Polynomial], b: Mapping[int, Polynomial]) -> Vec:
    result: Vec = dict(a)
    for index, f in b.items():
        total = result[index] + f if index in result else f
        if total:
            result[index] = total
        else:
            result.pop(index, None)
    return result


def vec_sub(a: Mapping[int, Polynomial], b: Mapping[int, Polynomial]) -> Vec:
    result: Vec = dict(a)
    for index, f in b.items():
        total = result[index] - f if index in result else -f
        if total:
            result[index] = total
        else:
            result.pop(index, None)
    return result


def vec_scale(vec: Mapping[int, Polynomial], factor: Polynomial) -> Vec:
    result: Vec = {}
    for index, f in vec.items():
        product = f * factor
        if product:
            result[index] = product
    return result


def vec_mul_term(vec: Mapping[int, Polynomial], monomial: Monomial, coeff: Any) -> Vec:
    return {index: f.mul_term((monomial, coeff)) for index, f in vec.items()}


def lead_term(vec: Mapping[int, Polynomial], order_key: Any) -> LeadTerm:
    """位置優先 (番号の小さい位置が大きい) 順序での先頭項。"""
    position = min(vec)
    component = vec[position]
    monomial = max(component.keys(), key=order_key)
    return position, monomial, component[monomial]


def leading_monomial_of(f: Polynomial, order_key: Any) -> Monomial:
    return max(f.keys(), key=order_key)


__all__ = [
    "FreeModule",
    "LeadTerm",
    "Vec",
    "VectorElem",
    "lead_term",
    "leading_monomial_of",
    "vec_add",
    "vec_degree",
    "vec_mul_term",
    "vec_scale",
    "vec_sub",
]
