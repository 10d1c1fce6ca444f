from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm, monomial_mul
from sympy.polys.rings import PolyRing

from algebra.monomials import Monomial
from algebra.polynomials import Polynomial
from algebra.ring import RingDescriptor
from exceptions import EngineAssertionError, HomogeneityError, StructuralError
from groebner.vectors import (
    FreeModule,
    LeadTerm,
    Vec,
    VectorElem,
    lead_term,
    vec_degree,
    vec_mul_term,
    vec_sub,
)


@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """部分加群のグレブナー基底。順序は位置優先 (番号の小さい位置が優位)。"""

    module: FreeModule
    elements: Tuple[VectorElem, ...]
    reduced: bool = True

    @property
    def leading_terms(self) -> List[Tuple[int, Monomial]]:
        key = self.module.ring.order.key
        return [lead_term(e.components, key)[:2] for e in self.elements]

    def __len__(self) -> int:
        return len(self.elements)


class _Reducer:
    """先頭項の索引を持つ割り算器。"""

    def __init__(self, poly_ring: PolyRing, order_key: Any) -> None:
        self._ring = poly_ring
        self._key = order_key
        self.vecs: List[Vec] = []
        self.leads: List[LeadTerm] = []
        self._by_position: Dict[int, List[int]] = {}

    def add(self, vec: Vec) -> int:
        index = len(self.vecs)
        lead = lead_term(vec, self._key)
        self.vecs.append(vec)
        self.leads.append(lead)
        self._by_position.setdefault(lead[0], []).append(index)
        return index

    def indices_at(self, position: int) -> List[int]:
        return self._by_position.get(position, [])

    def find_divisor(self, position: int, monomial: Monomial, skip: int = -1) -> Optional[int]:
        for index in self._by_position.get(position, ()):
            if index != skip and monomial_divides(self.leads[index][1], monomial):
                return index
        return None

    def reduce(self, vec: Vec, skip: int = -1) -> Vec:
        """全項を簡約した剰余を返す。"""
        pending: Vec = dict(vec)
        remainder: Dict[int, Dict[Monomial, Any]] = {}
        while pending:
            position, monomial, coeff = lead_term(pending, self._key)
            divisor = self.find_divisor(position, monomial, skip)
            if divisor is None:
                # 割れない先頭項は剰余へ移す。
                component = pending[position].copy()
                del component[monomial]
                if component:
                    pending[position] = component
                else:
                    del pending[position]
                remainder.setdefault(position, {})[monomial] = coeff
                continue
            _, lead_monomial, lead_coeff = self.leads[divisor]
            quotient = monomial_div(monomial, lead_monomial)
            pending = vec_sub(pending, vec_mul_term(self.vecs[divisor], quotient, coeff / lead_coeff))
        return {position: self._ring.from_dict(terms) for position, terms in remainder.items()}


def _monic(vec: Vec, order_key: Any, poly_ring: PolyRing) -> Vec:
    _, _, coeff = lead_term(vec, order_key)
    if coeff == poly_ring.domain.one:
        return vec
    inverse = poly_ring.domain.one / coeff
    zero = (0,) * poly_ring.ngens
    return vec_mul_term(vec, zero, inverse)


class GroebnerEngine:
    """自由加群の部分加群に対するブッフバーガー法の実装。

    S対の選択は正規戦略 (lcm の全次数が最小のもの、同点なら添字対の辞書式最小)。
    互いに素な先頭項の判定は階数1の場合のみ、連鎖判定は常に適用する。
    """

    def __init__(self, *, debug: bool = False, logger: Optional[logging.Logger] = None) -> None:
        self._debug = debug
        self._logger = logger or logging.getLogger("halg.groebner")

    # ------------------------------------------------------------------ 公開操作

    def normal_form(self, v: VectorElem, basis: GroebnerBasis) -> VectorElem:
        """v を基底で完全簡約した剰余を返す。

        Raises:
            StructuralError: v と基底の自由加群が一致しない場合。
        """
        if v.module.degrees != basis.module.degrees or v.module.ring.poly_ring != basis.module.ring.poly_ring:
            raise StructuralError("正規形を求める元と基底の自由加群が一致しません。")
        reducer = self._reducer_for(basis.module, [e.components for e in basis.elements])
        return VectorElem(v.module, reducer.reduce(v.components))

    def reduced_groebner(
        self, gens: Sequence[VectorElem], module: Optional[FreeModule] = None
    ) -> GroebnerBasis:
        """生成元から被約グレブナー基底を計算する。

        Args:
            gens (Sequence[VectorElem]): 同じ自由加群の斉次元。
            module (Optional[FreeModule]): 生成元が空の場合に使う自由加群。

        Returns:
            GroebnerBasis: 被約グレブナー基底。
        """
        ambient = self._ambient_of(gens, module)
        vecs = self._buchberger(ambient, [], [g.components for g in gens if not g.is_zero])
        return GroebnerBasis(ambient, tuple(VectorElem(ambient, v) for v in vecs))

    def extend_groebner(self, basis: GroebnerBasis, new: Sequence[VectorElem]) -> GroebnerBasis:
        """既存の基底に元を追加して基底を更新する。"""
        vecs = self._buchberger(
            basis.module,
            [e.components for e in basis.elements],
            [g.components for g in new if not g.is_zero],
        )
        return GroebnerBasis(basis.module, tuple(VectorElem(basis.module, v) for v in vecs))

    def syzygy_generators(
        self,
        gens: Sequence[VectorElem],
        degrees: Optional[Sequence[int]] = None,
        module: Optional[FreeModule] = None,
    ) -> List[VectorElem]:
        """生成元の間の関係 (シジジー) 加群の生成元を返す。

        位置優先順序で元の自由加群の位置を先に置いた拡大加群のグレブナー基底をとり、
        元の成分が消えた元の追跡部分を取り出す。

        Args:
            gens (Sequence[VectorElem]): 斉次な生成元。
            degrees (Optional[Sequence[int]]): 生成元ごとの次数。零元を含む場合は必須。
            module (Optional[FreeModule]): 生成元が空の場合に使う自由加群。

        Returns:
            List[VectorElem]: 生成元ごとに1つの位置を持つ自由加群の斉次元。
        """
        ambient = self._ambient_of(gens, module)
        source_degrees = self._source_degrees(gens, degrees)
        source = FreeModule(ambient.ring, tuple(source_degrees))
        return self._tracked_kernel(ambient, source, [g.components for g in gens], [])

    def relative_syzygies(
        self,
        columns: Sequence[VectorElem],
        source: FreeModule,
        target: FreeModule,
        modulo: Sequence[VectorElem] = (),
    ) -> List[VectorElem]:
        """Σ c_j col_j が modulo の生成する部分加群に入る係数 c の生成元を S 上で返す。

        modulo の元は追跡しない生成元として拡大加群へ加える。結果は I で簡約しない。

        Args:
            columns (Sequence[VectorElem]): target の元。source の位置ごとに1つ。
            source (FreeModule): 係数ベクトルの属する自由加群。
            target (FreeModule): columns と modulo の属する自由加群。
            modulo (Sequence[VectorElem]): 法とする部分加群の生成元。

        Returns:
            List[VectorElem]: source の斉次元。
        """
        if len(columns) != source.rank:
            raise StructuralError(f"列数 {len(columns)} が階数 {source.rank} と一致しません。")
        for vector in list(columns) + list(modulo):
            if vector.module.degrees != target.degrees:
                raise StructuralError("列と法の元は同じ自由加群に属さなければなりません。")
        return self._tracked_kernel(
            target,
            source,
            [c.components for c in columns],
            [m.components for m in modulo if not m.is_zero],
        )

    def kernel_over_quotient(
        self,
        columns: Sequence[VectorElem],
        source: FreeModule,
        target: FreeModule,
    ) -> List[VectorElem]:
        """剰余環 R 上の行列 R^a -> R^b の核の生成元を返す。

        S 上で [A | I e_1 | ... | I e_b] のシジジーを求め、最初の a 成分へ射影し、
        I のグレブナー基底で簡約する。I が無い場合はそのままシジジーを返す。

        Raises:
            HomogeneityError: 列の次数が source の次数と一致しない場合。
        """
        ring = target.ring
        for column, degree in zip(columns, source.degrees):
            column_degree = column.degree
            if column_degree is not None and column_degree != degree:
                raise HomogeneityError(f"列の次数 {column_degree} が基底次数 {degree} と一致しません。")

        kernel = self.relative_syzygies(columns, source, target, ideal_multiples(target))
        if not ring.is_quotient:
            return kernel

        reduced: List[VectorElem] = []
        seen: Set[VectorElem] = set()
        for vector in kernel:
            normalized = VectorElem(source, reduce_modulo_ideal(vector.components, ring))
            if normalized.is_zero or normalized in seen:
                continue
            seen.add(normalized)
            reduced.append(normalized)
        return reduced

    # ------------------------------------------------------------------ 内部処理

    def _ambient_of(self, gens: Sequence[VectorElem], module: Optional[FreeModule]) -> FreeModule:
        if module is None:
            if not gens:
                raise StructuralError("生成元が空のときは自由加群を指定してください。")
            module = gens[0].module
        for g in gens:
            if g.module.degrees != module.degrees or g.module.ring.poly_ring != module.ring.poly_ring:
                raise StructuralError("生成元の属する自由加群が一致しません。")
        return module

    @staticmethod
    def _source_degrees(gens: Sequence[VectorElem], degrees: Optional[Sequence[int]]) -> List[int]:
        if degrees is not None:
            if len(degrees) != len(gens):
                raise StructuralError("次数の個数が生成元の個数と一致しません。")
            return list(degrees)
        result: List[int] = []
        for g in gens:
            d = g.degree
            if d is None:
                raise StructuralError("零元を含む場合は次数を指定してください。")
            result.append(d)
        return result

    def _reducer_for(self, module: FreeModule, vecs: Sequence[Vec]) -> _Reducer:
        reducer = _Reducer(module.ring.poly_ring, module.ring.order.key)
        for vec in vecs:
            reducer.add(vec)
        return reducer

    def _tracked_kernel(
        self,
        target: FreeModule,
        source: FreeModule,
        columns: Sequence[Vec],
        untracked: Sequence[Vec],
    ) -> List[VectorElem]:
        rank = target.rank
        augmented_module = FreeModule(target.ring.ambient, target.degrees + source.degrees)
        one = target.ring.poly_ring.one
        augmented: List[Vec] = []
        for index, column in enumerate(columns):
            vec = dict(column)
            vec[rank + index] = one
            augmented.append(vec)
        augmented.extend(untracked)

        basis = self._buchberger(augmented_module, [], augmented)
        kernel: List[VectorElem] = []
        for vec in basis:
            if min(vec) < rank:
                continue
            kernel.append(VectorElem(source, {position - rank: f for position, f in vec.items()}))
        self._logger.debug("核の計算: 列数=%d, 生成元数=%d", len(columns), len(kernel))
        return kernel

    def _buchberger(self, module: FreeModule, basis: Sequence[Vec], new: Sequence[Vec]) -> List[Vec]:
        poly_ring = module.ring.poly_ring
        key = module.ring.order.key
        degrees = module.degrees
        use_coprime = module.rank == 1
        reducer = _Reducer(poly_ring, key)
        pending: Set[Tuple[int, int]] = set()
        heap: List[Tuple[int, int, int]] = []

        def pair_degree(i: int, j: int) -> int:
            position, mi, _ = reducer.leads[i]
            return sum(monomial_lcm(mi, reducer.leads[j][1])) + degrees[position]

        def add(vec: Vec, make_pairs: bool) -> None:
            new_index = reducer.add(vec)
            if not make_pairs:
                return
            position, monomial, _ = reducer.leads[new_index]
            for other in reducer.indices_at(position):
                if other == new_index:
                    continue
                other_monomial = reducer.leads[other][1]
                if use_coprime and monomial_lcm(monomial, other_monomial) == monomial_mul(monomial, other_monomial):
                    continue
                pending.add((other, new_index))
                heapq.heappush(heap, (pair_degree(other, new_index), other, new_index))

        for vec in basis:
            add(vec, make_pairs=False)
        for vec in new:
            vec_degree(vec, degrees)
            remainder = reducer.reduce(vec)
            if remainder:
                add(_monic(remainder, key, poly_ring), make_pairs=True)

        processed = 0
        while heap:
            _, i, j = heapq.heappop(heap)
            pending.discard((i, j))
            if self._chain_criterion(reducer, pending, i, j):
                continue
            processed += 1
            remainder = reducer.reduce(self._s_vector(reducer, i, j))
            if remainder:
                add(_monic(remainder, key, poly_ring), make_pairs=True)

        result = self._interreduce(reducer, poly_ring, key)
        self._logger.debug("グレブナー基底: S対処理数=%d, 基底の大きさ=%d", processed, len(result))
        if self._debug:
            self._assert_criterion(module, result)
        return result

    @staticmethod
    def _chain_criterion(reducer: _Reducer, pending: Set[Tuple[int, int]], i: int, j: int) -> bool:
        position, mi, _ = reducer.leads[i]
        lcm = monomial_lcm(mi, reducer.leads[j][1])
        for k in reducer.indices_at(position):
            if k in (i, j):
                continue
            if not monomial_divides(reducer.leads[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            return True
        return False

    @staticmethod
    def _s_vector(reducer: _Reducer, i: int, j: int) -> Vec:
        position, mi, ci = reducer.leads[i]
        _, mj, cj = reducer.leads[j]
        domain = reducer.vecs[i][position].ring.domain
        lcm = monomial_lcm(mi, mj)
        left = vec_mul_term(reducer.vecs[i], monomial_div(lcm, mi), domain.one / ci)
        right = vec_mul_term(reducer.vecs[j], monomial_div(lcm, mj), domain.one / cj)
        return vec_sub(left, right)

    @staticmethod
    def _interreduce(reducer: _Reducer, poly_ring: PolyRing, key: Any) -> List[Vec]:
        # 先頭項の昇順に並べ、既に残したものに割られる元を捨てる。
        order = sorted(
            range(len(reducer.vecs)),
            key=lambda index: (reducer.leads[index][0], key(reducer.leads[index][1]), index),
        )
        minimal: List[int] = []
        for index in order:
            position, monomial, _ = reducer.leads[index]
            if any(
                reducer.leads[kept][0] == position and monomial_divides(reducer.leads[kept][1], monomial)
                for kept in minimal
            ):
                continue
            minimal.append(index)

        minimal_reducer = _Reducer(poly_ring, key)
        for index in minimal:
            minimal_reducer.add(reducer.vecs[index])
        result = []
        for local_index in range(len(minimal)):
            reduced = minimal_reducer.reduce(minimal_reducer.vecs[local_index], skip=local_index)
            result.append(_monic(reduced, key, poly_ring))
        return result

    def _assert_criterion(self, module: FreeModule, vecs: List[Vec]) -> None:
        reducer = self._reducer_for(module, vecs)
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                if reducer.leads[i][0] != reducer.leads[j][0]:
                    continue
                if reducer.reduce(self._s_vector(reducer, i, j)):
                    raise EngineAssertionError("ブッフバーガー判定の事後検査に失敗しました。")


def reduce_modulo_ideal(vec: Vec, ring: RingDescriptor) -> Vec:
    """各成分を I の被約グレブナー基底で簡約する。"""
    if not ring.is_quotient:
        return dict(vec)
    result: Vec = {}
    for position, f in vec.items():
        remainder = f.rem(list(ring.ideal_basis))
        if remainder:
            result[position] = remainder
    return result


def polynomial_normal_form(f: Polynomial, ring: RingDescriptor) -> Polynomial:
    """多項式を I を法として正規形にする。"""
    if not ring.is_quotient or not f:
        return f
    return f.rem(list(ring.ideal_basis))


def ideal_multiples(module: FreeModule, ring: Optional[RingDescriptor] = None) -> List[VectorElem]:
    """I・F を生成する元 f e_p (f は I の基底) を返す。多項式環では空。

    Args:
        module (FreeModule): 元を置く自由加群。S 上に持ち上げたものでもよい。
        ring (Optional[RingDescriptor]): I を持つ剰余環。省略時は module の環。
    """
    ring = ring or module.ring
    return [
        VectorElem(module, {position: f})
        for position in range(module.rank)
        for f in ring.ideal_basis
    ]
