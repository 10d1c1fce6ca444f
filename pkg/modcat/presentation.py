from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from algebra.polynomials import Polynomial
from exceptions import ContractViolation, StructuralError
from groebner.engine import GroebnerBasis, GroebnerEngine, ideal_multiples, reduce_modulo_ideal
from groebner.vectors import FreeModule, Vec, VectorElem, vec_scale, vec_sub
from modcat.matrix import GradedMatrix
from modcat.module import SubquotientModule, cokernel

_LOGGER_NAME = "halg.modcat"


@dataclass(frozen=True, eq=False)
class MinimalPresentation:
    """M ≅ coker(matrix) となる極小表示。

    Attributes:
        matrix (GradedMatrix): 関係式の行列。成分はすべて極大イデアルに入る。
        generators (GradedMatrix): 元の加群の ambient 内で選んだ極小生成元。
    """

    matrix: GradedMatrix
    generators: GradedMatrix

    @property
    def generator_twists(self) -> tuple[int, ...]:
        return self.matrix.target.degrees

    @property
    def num_generators(self) -> int:
        return self.matrix.target.rank

    @property
    def num_relations(self) -> int:
        return self.matrix.source.rank

    def as_module(self) -> SubquotientModule:
        return cokernel(self.matrix)


def _engine_or_default(engine: Optional[GroebnerEngine]) -> GroebnerEngine:
    return engine or GroebnerEngine(logger=logging.getLogger(_LOGGER_NAME))


def _lift_vectors(vectors: Sequence[VectorElem], module: FreeModule) -> List[VectorElem]:
    return [VectorElem(module, dict(v.components)) for v in vectors if not v.is_zero]


def minimal_generators(
    vectors: Sequence[VectorElem],
    module: FreeModule,
    modulo: Sequence[VectorElem] = (),
    engine: Optional[GroebnerEngine] = None,
) -> List[VectorElem]:
    """次数の低い順に貪欲に選んだ極小生成系を返す (I と modulo を法として)。

    Args:
        vectors (Sequence[VectorElem]): module の斉次元。
        module (FreeModule): 元の属する自由加群。環が R なら I・module を法とする。
        modulo (Sequence[VectorElem]): 追加で法とする元。
        engine (Optional[GroebnerEngine]): 使用するエンジン。

    Returns:
        List[VectorElem]: I で簡約済みの極小生成系。
    """
    engine = _engine_or_default(engine)
    ring = module.ring
    lifted = module.with_ring(ring.ambient)
    candidates = []
    for v in vectors:
        reduced = reduce_modulo_ideal(v.components, ring)
        if reduced:
            candidates.append(VectorElem(module, reduced))
    candidates.sort(key=lambda v: v.degree if v.degree is not None else 0)

    base = _lift_vectors(modulo, lifted) + ideal_multiples(lifted, ring)
    basis = engine.reduced_groebner(base, lifted) if base else GroebnerBasis(lifted, ())
    kept: List[VectorElem] = []
    for v in candidates:
        v_lifted = VectorElem(lifted, dict(v.components))
        if engine.normal_form(v_lifted, basis).is_zero:
            continue
        kept.append(v)
        basis = engine.extend_groebner(basis, [v_lifted])
    return kept


def _find_unit(relations: List[Vec], rows: List[int]) -> Optional[tuple[int, int]]:
    # 行優先で番号の小さいものから定数成分を探す。
    for row in rows:
        for index, relation in enumerate(relations):
            entry = relation.get(row)
            if entry is not None and entry.is_ground:
                return row, index
    return None


def minimal_presentation(
    module: SubquotientModule,
    engine: Optional[GroebnerEngine] = None,
    logger: Optional[logging.Logger] = None,
) -> MinimalPresentation:
    """加群の極小表示を求める。

    生成元の関係加群を S 上のシジジーとして求め、定数成分を消去して生成元を減らし、
    残った関係式から極小生成系を選ぶ。

    Args:
        module (SubquotientModule): 対象の加群。
        engine (Optional[GroebnerEngine]): 使用するエンジン。
        logger (Optional[logging.Logger]): ロガー。

    Returns:
        MinimalPresentation: 生成元数が dim_k M/mM に等しい表示。
    """
    engine = _engine_or_default(engine)
    log = logger or logging.getLogger(_LOGGER_NAME)
    ring = module.ring
    generators = module.generator_vectors()
    degrees = list(module.generator_degrees)

    lifted_ambient = module.ambient.with_ring(ring.ambient)
    source_s = FreeModule(ring.ambient, tuple(degrees))
    modulo = _lift_vectors(module.relation_vectors(), lifted_ambient) + ideal_multiples(lifted_ambient, ring)
    kernel = engine.relative_syzygies(
        [VectorElem(lifted_ambient, dict(g.components)) for g in generators],
        source_s,
        lifted_ambient,
        modulo,
    )

    relations: List[Vec] = []
    for vector in kernel:
        reduced = reduce_modulo_ideal(vector.components, ring)
        if reduced:
            relations.append(reduced)

    rows = list(range(len(generators)))
    while True:
        found = _find_unit(relations, rows)
        if found is None:
            break
        row, index = found
        pivot = relations.pop(index)
        unit = pivot[row].LC
        updated: List[Vec] = []
        for relation in relations:
            entry: Optional[Polynomial] = relation.get(row)
            if entry is not None:
                relation = vec_sub(relation, vec_scale(pivot, entry.quo_ground(unit)))
                relation = reduce_modulo_ideal(relation, ring)
            if relation:
                updated.append(relation)
        relations = updated
        rows.remove(row)

    relabel: Dict[int, int] = {old: new for new, old in enumerate(rows)}
    target = FreeModule(ring, tuple(degrees[i] for i in rows))
    relabeled = [
        VectorElem(target, {relabel[position]: f for position, f in relation.items()})
        for relation in relations
    ]
    minimal_relations = minimal_generators(relabeled, target, engine=engine)
    matrix = GradedMatrix.from_columns(target, minimal_relations)
    chosen = GradedMatrix.from_columns(
        module.ambient,
        [generators[i] for i in rows],
        [degrees[i] for i in rows],
    )
    log.debug(
        "極小表示: 生成元 %d -> %d, 関係式 %d",
        len(generators),
        target.rank,
        matrix.source.rank,
    )
    return MinimalPresentation(matrix, chosen)


def kernel_and_homology(
    d_hi: GradedMatrix,
    d_lo: GradedMatrix,
    *,
    lower_relations: Sequence[VectorElem] = (),
    middle_relations: Sequence[VectorElem] = (),
    engine: Optional[GroebnerEngine] = None,
    check_complex: bool = True,
) -> SubquotientModule:
    """ker(d_lo) / im(d_hi) を部分商加群として返す。

    部分商加群の複体 (Hom 複体など) のために、d_lo の終域側の関係式 lower_relations
    と中央の関係式 middle_relations を受け取る。このとき核は
    {v : d_lo v ∈ im(lower_relations) + I・F} となる。

    Args:
        d_hi (GradedMatrix): 入ってくる写像。
        d_lo (GradedMatrix): 出ていく写像。
        lower_relations (Sequence[VectorElem]): d_lo の終域で法とする元。
        middle_relations (Sequence[VectorElem]): 中央で法とする元。
        engine (Optional[GroebnerEngine]): 使用するエンジン。
        check_complex (bool): d_lo ∘ d_hi = 0 を検査するかどうか。

    Returns:
        SubquotientModule: ホモロジー加群。

    Raises:
        StructuralError: 行列の形が合わない場合。
        ContractViolation: d_lo ∘ d_hi が 0 でない場合。
    """
    engine = _engine_or_default(engine)
    middle = d_lo.source
    if d_hi.target.degrees != middle.degrees:
        raise StructuralError("d_hi の終域と d_lo の始域が一致しません。")
    ring = middle.ring
    lower_s = d_lo.target.with_ring(ring.ambient)
    modulo = _lift_vectors(lower_relations, lower_s) + ideal_multiples(lower_s, ring)

    if check_complex and not d_hi.is_zero() and d_lo.target.rank:
        basis = engine.reduced_groebner(modulo, lower_s) if modulo else GroebnerBasis(lower_s, ())
        for column in d_hi.columns:
            image = VectorElem(lower_s, dict(d_lo.apply(column).components))
            if not engine.normal_form(image, basis).is_zero:
                raise ContractViolation("複体ではありません: 合成写像が零になりません。")

    if d_lo.target.rank == 0:
        kernel = [middle.basis_vector(i) for i in range(middle.rank)]
    else:
        middle_s = middle.with_ring(ring.ambient)
        raw = engine.relative_syzygies(
            [VectorElem(lower_s, dict(c.components)) for c in d_lo.columns],
            middle_s,
            lower_s,
            modulo,
        )
        kernel = [VectorElem(middle, dict(v.components)) for v in raw]
        kernel = minimal_generators(kernel, middle, engine=engine)

    generators = GradedMatrix.from_columns(middle, kernel)
    relation_columns = [c for c in d_hi.columns if not c.is_zero] + [
        VectorElem(middle, dict(v.components)) for v in middle_relations if not v.is_zero
    ]
    relations = GradedMatrix.from_columns(middle, relation_columns)
    return SubquotientModule(middle, generators, relations)
