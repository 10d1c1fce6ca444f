from __future__ import annotations

import logging
from dataclasses import replace
from typing import List, Optional

from algebra.monomials import TermOrder
from algebra.ring import RingDescriptor
from exceptions import HalgError
from groebner.quotient import build_ring
from groebner.vectors import FreeModule, VectorElem
from invariants.calculator import InvariantCalculator, residue_field
from modcat.matrix import GradedMatrix
from modcat.module import SubquotientModule
from oracle.degreewise import DegreewiseOracle
from verify.checks import CheckContext, CheckFunction
from verify.outcome import CheckOutcome, Status

ORACLE_DEGREES = 6


def _convert(matrix: GradedMatrix, ring: RingDescriptor) -> GradedMatrix:
    target = FreeModule(ring, matrix.target.degrees)
    columns = tuple(
        VectorElem(target, {p: ring.coerce([f])[0] for p, f in column.components.items()})
        for column in matrix.columns
    )
    return GradedMatrix(FreeModule(ring, matrix.source.degrees), target, columns)


def reorder_module(module: SubquotientModule, order: TermOrder) -> SubquotientModule:
    """同じ加群を別の単項式順序の環の上で作り直す。"""
    ring = module.ring
    rebuilt = build_ring(ring.variables, ring.field, order, ring.ideal)
    return SubquotientModule(
        FreeModule(rebuilt, module.ambient.degrees),
        _convert(module.generators, rebuilt),
        _convert(module.relations, rebuilt),
    )


def _hilbert_mismatch(
    label: str, module: SubquotientModule, calculator: InvariantCalculator, oracle: DegreewiseOracle
) -> Optional[str]:
    """エンジンの Hilbert 関数を、表示から次数ごとに数え直した値と比べる。"""
    start = min(module.generator_degrees, default=0)
    expected = oracle.hilbert_values(module, start, start + ORACLE_DEGREES)
    computed = calculator.hilbert(module).values(range(start, start + ORACLE_DEGREES + 1))
    if expected == computed:
        return None
    return f"H({label}) 次数 {start} から: エンジン {computed}, 検算器 {expected}"


def _resolution_mismatch(
    module: SubquotientModule, calculator: InvariantCalculator, oracle: DegreewiseOracle, steps: int
) -> Optional[str]:
    """極小分解が F_0 で M を与え、1..steps-1 で完全で、単数成分を持たないことを次数ごとに確かめる。

    この3つが成り立てば分解の階数が Betti 数になる。
    """
    resolution = calculator.resolution(module, steps)
    for index in range(1, steps + 1):
        matrix = resolution.differential(index)
        for q, column in enumerate(matrix.columns):
            for p, f in column.components.items():
                if f and matrix.target.degrees[p] == matrix.source.degrees[q]:
                    return f"d_{index} の ({p}, {q}) 成分が単数です (極小でない)"
    for index in range(steps):
        middle = resolution.free_module(index)
        if not middle.rank:
            continue
        outgoing = resolution.differential(index) if index else None
        start = min(middle.degrees)
        for degree in range(start, start + ORACLE_DEGREES + 1):
            homology = oracle.complex_homology(middle, resolution.differential(index + 1), outgoing, degree)
            expected = oracle.hilbert_function(module, degree) if index == 0 else 0
            if homology != expected:
                return f"分解の F_{index} 次数 {degree} でのホモロジー: {homology} (期待値 {expected})"
    return None


def _bass_mismatch(
    label: str,
    module: SubquotientModule,
    calculator: InvariantCalculator,
    oracle: DegreewiseOracle,
    top: int,
) -> Optional[str]:
    """μ^i = Σ_d dim H^i(Hom(F_•, M))_d を k の分解から次数ごとに数え直す。"""
    if calculator.is_zero(module):
        return None
    resolution = calculator.resolution(residue_field(module.ring), top + 1)
    ambient, relations = oracle.cokernel_hom_data(calculator.minimal_module(module))
    lowest = min(ambient.degrees, default=0)
    highest = max([lowest] + [d for d in (v.degree for v in relations) if d is not None])
    expected: List[int] = []
    for index in range(top + 1):
        middle = resolution.free_module(index)
        if not middle.rank:
            expected.append(0)
            continue
        outgoing = resolution.differential(index) if index else None
        degrees = range(lowest - max(middle.degrees), highest - min(middle.degrees) + ORACLE_DEGREES + 1)
        expected.append(
            sum(
                oracle.hom_cohomology(middle, resolution.differential(index + 1), outgoing, ambient, relations, d)
                for d in degrees
            )
        )
    computed = calculator.bass_numbers(module, top)
    if expected == computed:
        return None
    return f"μ({label}): エンジン {computed}, 検算器 {expected}"


def _deficiency_mismatch(
    index: int, context: CheckContext, oracle: DegreewiseOracle
) -> Optional[str]:
    """K^index(M) の Hilbert 関数を Ext^{s-index}_S(M, S(-s)) として S 分解から数え直す。"""
    calculator = context.calculator
    module = context.deficiency(index)
    s = context.ring.num_variables
    resolution = calculator.s_resolution(context.module)
    position = s - index
    middle = resolution.free_module(position)
    if not middle.rank:
        return None if calculator.is_zero(module) else f"K^{index}(M) は S 分解から零のはずです"
    outgoing = resolution.differential(position) if position else None
    twist = FreeModule(middle.ring, (s,))
    start = s - max(middle.degrees)
    degrees = range(start, s - min(middle.degrees) + ORACLE_DEGREES + 1)
    expected = [
        oracle.hom_cohomology(middle, resolution.differential(position + 1), outgoing, twist, [], d) for d in degrees
    ]
    computed = calculator.hilbert(module).values(degrees)
    if expected == computed:
        return None
    return f"H(K^{index}(M)) 次数 {start} から: エンジン {computed}, 検算器 {expected}"


def oracle_mismatches(context: CheckContext, top: int, logger: Optional[logging.Logger] = None) -> List[str]:
    """検査が比べた量 (M と K^j(M) の Hilbert 関数、Betti 数、Bass 数) を次数ごとの線形代数で計算し直す。

    Args:
        context (CheckContext): 元の検査の入力。エンジンの値はこの計算器から取る。
        top (int): Betti 数と Bass 数を比べる番号の上限。

    Returns:
        List[str]: 食い違いの説明。空なら全て一致。
    """
    oracle = DegreewiseOracle(logger)
    calculator = context.calculator
    found = [
        _hilbert_mismatch("M", context.module, calculator, oracle),
        _resolution_mismatch(context.module, calculator, oracle, top + 1),
        _bass_mismatch("M", context.module, calculator, oracle, top),
    ]
    if not context.is_zero:
        for index in range(context.depth, context.dimension + 1):
            label = f"K^{index}(M)"
            found.append(_deficiency_mismatch(index, context, oracle))
            found.append(_hilbert_mismatch(label, context.deficiency(index), calculator, oracle))
            found.append(_bass_mismatch(label, context.deficiency(index), calculator, oracle, top))
    return [message for message in found if message]


def _oracle_top(outcome: CheckOutcome, context: CheckContext) -> int:
    indices = [w.index for w in outcome.witnesses if w.index is not None]
    dimension = 0 if context.is_zero else context.dimension
    return min(max(indices, default=0) + 1, context.window_bound + dimension + 2)


def reverify_failure(
    outcome: CheckOutcome,
    context: CheckContext,
    check: CheckFunction,
    logger: Optional[logging.Logger] = None,
) -> CheckOutcome:
    """FAIL を lex 順序・新しいキャッシュで計算し直し、比べた量を検算器でも計算し直す。

    FAIL 以外はそのまま返す。検算器がエンジンと食い違えば UNKNOWN に下げ、一致すれば FAIL のまま注記する。
    """
    if outcome.status is not Status.FAIL:
        return outcome
    log = logger or logging.getLogger("halg.verify")
    notes: List[str] = []
    try:
        fresh = replace(
            context,
            module=reorder_module(context.module, TermOrder.LEX),
            calculator=InvariantCalculator(debug=True, logger=log),
        )
        recheck = check(fresh)
    except HalgError as exc:
        log.error("%s/%s: lex 順序の再計算に失敗しました。", outcome.module_id, outcome.check_id, exc_info=exc)
        notes.append(f"lex 順序の再計算に失敗しました: {exc}")
    else:
        if recheck.status is Status.FAIL:
            same = {w.label for w in recheck.witnesses} == {w.label for w in outcome.witnesses}
            notes.append("lex 順序の再計算でも FAIL を再現しました。" if same else "lex 順序の再計算でも FAIL (証拠は異なる)。")
        else:
            log.error(
                "%s/%s: lex 順序の再計算と結果が異なります (%s)", outcome.module_id, outcome.check_id, recheck.status.value
            )
            notes.append(f"lex 順序の再計算では {recheck.status.value} でした。")

    try:
        mismatches = oracle_mismatches(context, _oracle_top(outcome, context), log)
    except HalgError as exc:
        log.warning("%s/%s: 検算器で計算し直せませんでした: %s", outcome.module_id, outcome.check_id, exc)
        return outcome.with_notes(*notes, f"検算器で計算し直せませんでした: {exc}")
    if mismatches:
        log.error("%s/%s: 検算器とエンジンが食い違います: %s", outcome.module_id, outcome.check_id, mismatches)
        withheld = (*notes, "検算器とエンジンが食い違うため FAIL を保留しました。", *mismatches)
        return replace(outcome, status=Status.UNKNOWN, notes=outcome.notes + withheld)
    return outcome.with_notes(*notes, "次数ごとの検算器でも Hilbert 関数・分解・Bass 数が一致しました。")
