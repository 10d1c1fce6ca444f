from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.monomials import monomial_mul

from algebra.monomials import Monomial
from algebra.ring import RingDescriptor
from exceptions import StructuralError
from groebner.vectors import FreeModule, VectorElem
from modcat.matrix import GradedMatrix
from modcat.module import SubquotientModule

# 疎な行: 列番号 -> 係数
Row = Dict[int, Any]


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> Tuple[Monomial, ...]:
    """次数 degree の単項式をすべて返す (負の次数は空)。"""
    if degree < 0:
        return ()
    result = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exponents = [0] * nvars
        for index in combo:
            exponents[index] += 1
        result.append(tuple(exponents))
    return tuple(result)


def matrix_rank(rows: Sequence[Row], ncols: int, domain: Any) -> int:
    """疎な行の集まりの階数を DomainMatrix で求める。"""
    nonzero = [row for row in rows if row]
    if not nonzero or ncols == 0:
        return 0
    data = {i: dict(row) for i, row in enumerate(nonzero)}
    return DomainMatrix(data, (len(nonzero), ncols), domain).rank()


class _GradedBasis:
    """自由加群 F の次数 d 成分の基底 (位置, 単項式) と番号付け。"""

    def __init__(self, module: FreeModule, degree: int) -> None:
        nvars = module.ring.num_variables
        self.entries: List[Tuple[int, Monomial]] = [
            (position, monomial)
            for position, shift in enumerate(module.degrees)
            for monomial in monomials_of_degree(nvars, degree - shift)
        ]
        self.index = {entry: i for i, entry in enumerate(self.entries)}

    def __len__(self) -> int:
        return len(self.entries)


def _ideal_products(ambient: FreeModule, ring: RingDescriptor) -> List[VectorElem]:
    """I の入力生成元 (グレブナー基底ではない) から I・F の生成元 f e_p を作る。"""
    return [ambient.vector({position: f}) for position in range(ambient.rank) for f in ring.ideal]


def _span_rows(vectors: Sequence[VectorElem], module: FreeModule, degree: int, basis: _GradedBasis) -> List[Row]:
    """vectors の生成する部分加群の次数 degree 成分を張る行。"""
    nvars = module.ring.num_variables
    rows: List[Row] = []
    for vector in vectors:
        vector_degree = vector.degree
        if vector_degree is None or vector_degree > degree:
            continue
        for multiplier in monomials_of_degree(nvars, degree - vector_degree):
            row: Row = {}
            for position, f in vector.components.items():
                for monomial, coeff in f.items():
                    column = basis.index[(position, monomial_mul(monomial, multiplier))]
                    row[column] = row.get(column, 0) + coeff
            rows.append({c: v for c, v in row.items() if v})
    return rows


class DegreewiseOracle:
    """Gröbner 基底を使わず、次数ごとの線形代数だけで Hilbert 関数や Tor を計算する。"""

    def __init__(self, logger: Optional[logging.Logger] = None) -> None:
        self._logger = logger or logging.getLogger("halg.oracle")

    # ------------------------------------------------------------------ Hilbert 関数

    @staticmethod
    def _lifted(module: SubquotientModule) -> Tuple[FreeModule, List[VectorElem], List[VectorElem]]:
        ring = module.ring
        ambient = module.ambient.with_ring(ring.ambient)
        relations = [VectorElem(ambient, dict(v.components)) for v in module.relation_vectors()]
        relations += _ideal_products(ambient, ring)
        generators = [VectorElem(ambient, dict(v.components)) for v in module.generator_vectors() if not v.is_zero]
        return ambient, generators, relations

    def hilbert_function(self, module: SubquotientModule, degree: int) -> int:
        """H_M(degree) = dim (G + N + IF)_d - dim (N + IF)_d。"""
        ambient, generators, relations = self._lifted(module)
        basis = _GradedBasis(ambient, degree)
        domain = ambient.ring.field.domain
        lower = matrix_rank(_span_rows(relations, ambient, degree, basis), len(basis), domain)
        upper = matrix_rank(_span_rows(relations + generators, ambient, degree, basis), len(basis), domain)
        return upper - lower

    def hilbert_values(self, module: SubquotientModule, start: int, stop: int) -> List[int]:
        return [self.hilbert_function(module, d) for d in range(start, stop + 1)]

    def standard_monomial_count(self, ring: RingDescriptor, degree: int) -> int:
        """I の生成元から作る Macaulay 行列の余階数 = 次数 degree の標準単項式の個数。"""
        ambient = FreeModule(ring.ambient, (0,))
        basis = _GradedBasis(ambient, degree)
        generators = [ambient.vector({0: f}) for f in ring.ideal]
        rows = _span_rows(generators, ambient, degree, basis)
        return len(basis) - matrix_rank(rows, len(basis), ring.field.domain)

    def syzygy_dimension(
        self, generators: Sequence[VectorElem], degrees: Sequence[int], degree: int
    ) -> int:
        """Σ a_i g_i = 0 となる次数 degree の係数ベクトル全体の次元 (多項式環上)。"""
        if not generators:
            return 0
        target = generators[0].module.with_ring(generators[0].module.ring.ambient)
        basis = _GradedBasis(target, degree)
        nvars = target.ring.num_variables
        columns = sum(len(monomials_of_degree(nvars, degree - b)) for b in degrees)
        rows: List[Row] = []
        for generator, shift in zip(generators, degrees):
            lifted = VectorElem(target, dict(generator.components))
            for multiplier in monomials_of_degree(nvars, degree - shift):
                row: Row = {}
                for position, f in lifted.components.items():
                    for monomial, coeff in f.items():
                        column = basis.index[(position, monomial_mul(monomial, multiplier))]
                        row[column] = row.get(column, 0) + coeff
                rows.append({c: v for c, v in row.items() if v})
        return columns - matrix_rank(rows, len(basis), target.ring.field.domain)

    # ------------------------------------------------------------------ Koszul ホモロジー

    @staticmethod
    def _quotient_form(module: SubquotientModule) -> Tuple[FreeModule, List[VectorElem]]:
        """余核表示 F / (N + IF) の (F, N + IF) を返す。

        Raises:
            StructuralError: 生成元が ambient の標準基底でない場合。
        """
        ambient = module.ambient.with_ring(module.ring.ambient)
        one = ambient.ring.poly_ring.one
        identity = module.generator_degrees == ambient.degrees and all(
            column.components == {i: one} for i, column in enumerate(module.generators.columns)
        )
        if not identity:
            raise StructuralError("Koszul ホモロジーは余核表示の加群に対して計算してください。")
        relations = [VectorElem(ambient, dict(v.components)) for v in module.relation_vectors()]
        return ambient, relations + _ideal_products(ambient, module.ring)

    def koszul_homology(self, module: SubquotientModule, index: int, degree: int) -> int:
        """dim_k H_index(x_1..x_s; M)_degree = dim_k Tor^S_index(k, M)_degree。"""
        ambient, relations = self._quotient_form(module)
        s = ambient.ring.num_variables
        if index < 0 or index > s:
            return 0
        dim_q = self._quotient_dimension(ambient, relations, index, degree)
        return dim_q - self._boundary_rank(ambient, relations, index, degree) - self._boundary_rank(
            ambient, relations, index + 1, degree
        )

    def _quotient_dimension(
        self, ambient: FreeModule, relations: Sequence[VectorElem], index: int, degree: int
    ) -> int:
        s = ambient.ring.num_variables
        blocks = len(list(combinations(range(s), index)))
        basis = _GradedBasis(ambient, degree - index)
        rank = matrix_rank(_span_rows(relations, ambient, degree - index, basis), len(basis), ambient.ring.field.domain)
        return blocks * (len(basis) - rank)

    def _boundary_rank(
        self, ambient: FreeModule, relations: Sequence[VectorElem], index: int, degree: int
    ) -> int:
        """∂_index: ∧^index ⊗ M -> ∧^{index-1} ⊗ M の次数 degree での階数。"""
        s = ambient.ring.num_variables
        if index <= 0 or index > s:
            return 0
        domain = ambient.ring.field.domain
        source_blocks = list(combinations(range(s), index))
        target_blocks = list(combinations(range(s), index - 1))
        target_index = {block: i for i, block in enumerate(target_blocks)}
        source_basis = _GradedBasis(ambient, degree - index)
        target_basis = _GradedBasis(ambient, degree - index + 1)
        width = len(target_basis)
        ncols = width * len(target_blocks)

        def unit(variable: int) -> Monomial:
            return tuple(1 if i == variable else 0 for i in range(s))

        rows: List[Row] = []
        for block in source_blocks:
            for position, monomial in source_basis.entries:
                row: Row = {}
                for k, variable in enumerate(block):
                    smaller = block[:k] + block[k + 1 :]
                    column = target_index[smaller] * width + target_basis.index[
                        (position, monomial_mul(monomial, unit(variable)))
                    ]
                    row[column] = domain.one if k % 2 == 0 else -domain.one
                rows.append(row)

        # 終域の部分空間 ⊕ U_{d-index+1} を加えて商写像の階数を求める。
        relation_rows = _span_rows(relations, ambient, degree - index + 1, target_basis)
        submodule_rows: List[Row] = []
        for block_number in range(len(target_blocks)):
            offset = block_number * width
            submodule_rows.extend({offset + c: v for c, v in row.items()} for row in relation_rows)
        submodule_rank = matrix_rank(submodule_rows, ncols, domain)
        return matrix_rank(rows + submodule_rows, ncols, domain) - submodule_rank

    def koszul_betti(
        self, module: SubquotientModule, max_degree: int, min_degree: int = 0
    ) -> Dict[Tuple[int, int], int]:
        """(i, d) -> dim Tor_i(k, M)_d (非零のもののみ)。"""
        s = module.ring.num_variables
        table: Dict[Tuple[int, int], int] = {}
        for index in range(s + 1):
            for degree in range(min_degree, max_degree + 1):
                value = self.koszul_homology(module, index, degree)
                if value:
                    table[(index, degree)] = value
        return table

    def koszul_depth(self, module: SubquotientModule, max_degree: int, min_degree: int = 0) -> Optional[int]:
        """g = s - max{i : H_i ≠ 0}。窓内で全ホモロジーが消えれば None (零加群)。"""
        table = self.koszul_betti(module, max_degree, min_degree)
        if not table:
            return None
        top = max(index for index, _ in table)
        return module.ring.num_variables - top

    def bass_over_polynomial_ring(self, module: SubquotientModule, max_degree: int, min_degree: int = 0) -> List[int]:
        """Koszul 自己双対性 Ext^i_S(k, M) ≅ Tor^S_{s-i}(k, M) による S 上の Bass 数 μ^0..μ^s。"""
        s = module.ring.num_variables
        table = self.koszul_betti(module, max_degree + s, min_degree)
        totals = [0] * (s + 1)
        for (index, _), value in table.items():
            totals[s - index] += value
        return totals

    # ------------------------------------------------------------------ 自由複体と Hom 複体

    @staticmethod
    def _rank_modulo(rows: Sequence[Row], modulo: Sequence[Row], ncols: int, domain: Any) -> int:
        """rows の像を modulo の張る部分空間で割った商での階数。"""
        return matrix_rank(list(rows) + list(modulo), ncols, domain) - matrix_rank(modulo, ncols, domain)

    def _image_rank(self, matrix: GradedMatrix, degree: int) -> int:
        """R 上の写像 matrix の次数 degree での階数。終域は F / IF として数える。"""
        ring = matrix.ring
        target = matrix.target.with_ring(ring.ambient)
        basis = _GradedBasis(target, degree)
        columns = [VectorElem(target, dict(c.components)) for c in matrix.columns if not c.is_zero]
        ideal_rows = _span_rows(_ideal_products(target, ring), target, degree, basis)
        image_rows = _span_rows(columns, target, degree, basis)
        return self._rank_modulo(image_rows, ideal_rows, len(basis), ring.field.domain)

    def complex_homology(
        self,
        middle: FreeModule,
        incoming: Optional[GradedMatrix],
        outgoing: Optional[GradedMatrix],
        degree: int,
    ) -> int:
        """R 上の自由複体 G -> middle -> H の middle でのホモロジーの次数 degree 成分の次元。

        Args:
            middle (FreeModule): 真ん中の自由加群。
            incoming (Optional[GradedMatrix]): G -> middle。None は零写像。
            outgoing (Optional[GradedMatrix]): middle -> H。None は零写像。
            degree (int): 次数。
        """
        ring = middle.ring
        lifted = middle.with_ring(ring.ambient)
        basis = _GradedBasis(lifted, degree)
        ideal_rank = matrix_rank(
            _span_rows(_ideal_products(lifted, ring), lifted, degree, basis), len(basis), ring.field.domain
        )
        outgoing_rank = self._image_rank(outgoing, degree) if outgoing is not None else 0
        incoming_rank = self._image_rank(incoming, degree) if incoming is not None else 0
        return len(basis) - ideal_rank - outgoing_rank - incoming_rank

    @staticmethod
    def _hom_space(
        free: FreeModule, ambient: FreeModule, relations: Sequence[VectorElem], degree: int
    ) -> Tuple[List[_GradedBasis], List[int], List[Row]]:
        """Hom(free, F/U)_degree = ⊕_p (F/U)_{degree + a_p} の成分ごとの基底と先頭位置、U の行。"""
        bases: List[_GradedBasis] = []
        offsets: List[int] = []
        submodule: List[Row] = []
        total = 0
        for shift in free.degrees:
            basis = _GradedBasis(ambient, degree + shift)
            rows = _span_rows(relations, ambient, degree + shift, basis)
            submodule.extend({total + c: v for c, v in row.items()} for row in rows)
            bases.append(basis)
            offsets.append(total)
            total += len(basis)
        offsets.append(total)
        return bases, offsets, submodule

    def _coboundary_rank(
        self, matrix: GradedMatrix, ambient: FreeModule, relations: Sequence[VectorElem], degree: int
    ) -> int:
        """φ -> φ∘matrix: Hom(H, F/U) -> Hom(G, F/U) の次数 degree での階数 (matrix: G -> H)。"""
        domain = ambient.ring.field.domain
        source_bases, source_offsets, _ = self._hom_space(matrix.target, ambient, relations, degree)
        target_bases, target_offsets, target_submodule = self._hom_space(matrix.source, ambient, relations, degree)
        ncols = target_offsets[-1]
        rows: List[Row] = []
        for p, basis in enumerate(source_bases):
            for position, monomial in basis.entries:
                row: Row = {}
                for q, column in enumerate(matrix.columns):
                    entry = column.components.get(p)
                    if not entry:
                        continue
                    for factor, coeff in entry.items():
                        index = target_bases[q].index[(position, monomial_mul(monomial, factor))]
                        key = target_offsets[q] + index
                        row[key] = row.get(key, domain.zero) + coeff
                rows.append({c: v for c, v in row.items() if v})
        return self._rank_modulo(rows, target_submodule, ncols, domain)

    def hom_cohomology(
        self,
        middle: FreeModule,
        incoming: Optional[GradedMatrix],
        outgoing: Optional[GradedMatrix],
        ambient: FreeModule,
        relations: Sequence[VectorElem],
        degree: int,
    ) -> int:
        """自由複体 G -> middle -> H に Hom(-, F/U) を施した複体の middle でのコホモロジーの次元。

        F/U は多項式環上の自由加群 ambient と U の生成元 relations で与える (R 上の加群なら IF を含める)。

        Args:
            middle (FreeModule): 真ん中の自由加群。
            incoming (Optional[GradedMatrix]): G -> middle。None は零写像。
            outgoing (Optional[GradedMatrix]): middle -> H。None は零写像。
            ambient (FreeModule): 多項式環上の自由加群 F。
            relations (Sequence[VectorElem]): U の生成元。
            degree (int): Hom の次数。
        """
        domain = ambient.ring.field.domain
        _, offsets, submodule = self._hom_space(middle, ambient, relations, degree)
        width = offsets[-1]
        quotient = width - matrix_rank(submodule, width, domain)
        leaving = self._coboundary_rank(incoming, ambient, relations, degree) if incoming is not None else 0
        arriving = self._coboundary_rank(outgoing, ambient, relations, degree) if outgoing is not None else 0
        return quotient - leaving - arriving

    def cokernel_hom_data(self, module: SubquotientModule) -> Tuple[FreeModule, List[VectorElem]]:
        """余核表示の加群を hom_cohomology に渡す (F, U) に直す。"""
        return self._quotient_form(module)
