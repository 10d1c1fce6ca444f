from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Callable, Dict, List, Optional, Tuple

from algebra.ring import RingDescriptor
from invariants.calculator import DeficiencyFamily, InvariantCalculator, residue_field, ring_module
from invariants.predicates import (
    FinitenessResult,
    id_finite,
    is_canonically_cm,
    is_cohen_macaulay,
    is_complete_intersection,
    is_equidimensional,
    is_generalized_cm,
    minimal_ideal_generators,
    pd_finite,
    serre_bound,
    serre_level,
)
from modcat.hilbert import MINUS_INFINITY, HilbertData
from modcat.module import SubquotientModule, direct_sum, zero_module
from verify.outcome import (
    CheckOutcome,
    IsoVerdict,
    Number,
    Status,
    Window,
    Witness,
    aligned_series,
    iso_evidence,
    skipped,
)

_LOGGER = logging.getLogger("halg.verify")

ZERO_MODULE_NOTE = "零加群なので対象外です。"


@dataclass(eq=False)
class CheckContext:
    """検査1回分の入力。コーパスの指定値は仮定の判定にだけ使う。"""

    module_id: str
    module: SubquotientModule
    calculator: InvariantCalculator
    bound: Optional[int] = None
    equidimensional: Optional[bool] = None
    serre_k: Optional[int] = None

    @property
    def ring(self) -> RingDescriptor:
        return self.module.ring

    @cached_property
    def window_bound(self) -> int:
        if self.bound is not None:
            return self.bound
        return self.calculator.default_bound(self.ring)

    @cached_property
    def family(self) -> DeficiencyFamily:
        return self.calculator.deficiency_family(self.module)

    @property
    def is_zero(self) -> bool:
        return self.family.dimension == MINUS_INFINITY

    @property
    def depth(self) -> int:
        return int(self.family.depth)

    @property
    def dimension(self) -> int:
        return int(self.family.dimension)

    @property
    def ring_depth(self) -> int:
        return self.calculator.ring_depth(self.ring)

    def deficiency(self, index: int) -> SubquotientModule:
        """K^index(M)。範囲外は零加群。"""
        return self.family.get(index) or zero_module(self.ring)

    @property
    def canonical(self) -> SubquotientModule:
        return self.deficiency(self.dimension)

    def betti(self, module: SubquotientModule, bound: int) -> List[int]:
        if self.calculator.is_zero(module):
            return [0] * (bound + 1)
        return self.calculator.betti_numbers(module, bound)

    def bass(self, module: SubquotientModule, bound: int) -> List[int]:
        return self.calculator.bass_numbers(module, bound)


CheckFunction = Callable[[CheckContext], CheckOutcome]


class _Tally:
    """比較を記録し、成り立たなかったものを証拠として集める。"""

    def __init__(self) -> None:
        self.witnesses: List[Witness] = []
        self.notes: List[str] = []

    def record(self, label: str, index: Optional[int], lhs: Number, rhs: Number, holds: bool) -> bool:
        if not holds:
            self.witnesses.append(Witness(index, lhs, rhs, label))
        return holds

    def equal(self, label: str, index: Optional[int], lhs: Number, rhs: Number) -> bool:
        return self.record(label, index, lhs, rhs, lhs == rhs)

    def at_most(self, label: str, index: Optional[int], lhs: Number, rhs: Number) -> bool:
        return self.record(label, index, lhs, rhs, lhs <= rhs)

    def at_least(self, label: str, index: Optional[int], lhs: Number, rhs: Number) -> bool:
        return self.record(label, index, lhs, rhs, lhs >= rhs)

    def holds(self, label: str, value: bool) -> bool:
        # 真偽の主張は 1 / 0 で記録する。
        return self.record(label, None, int(value), 1, value)

    @property
    def failed(self) -> bool:
        return bool(self.witnesses)

    def outcome(self, check_id: str, module_id: str, window: Optional[Window]) -> CheckOutcome:
        status = Status.FAIL if self.witnesses else Status.PASS
        return CheckOutcome(check_id, module_id, status, window, tuple(self.witnesses), tuple(self.notes))


def _deficiency_or_zero(calculator: InvariantCalculator, module: SubquotientModule, index: int) -> SubquotientModule:
    t = calculator.dimension(module)
    if t == MINUS_INFINITY or not 0 <= index <= t:
        return zero_module(module.ring)
    return calculator.deficiency_module(module, index)


def _positive_depth(calculator: InvariantCalculator, module: SubquotientModule) -> bool:
    return calculator.depth(module) > 0


# ---------------------------------------------------------------------- 次元の上界


def _cm_equivalence(context: CheckContext, equi: Optional[bool], tally: _Tally) -> None:
    """M CM ⟺ 等次元・標準 CM・S_2 の両辺を比べる。等次元性が不明なら CM からの向きだけ。"""
    calculator = context.calculator
    cm = is_cohen_macaulay(context.module, calculator)
    ccm = is_canonically_cm(context.module, calculator)
    if equi is None:
        if cm:
            tally.holds("M が CM => K(M) は CM", ccm)
        tally.notes.append("等次元性が不明なため CM の同値は CM からの向きだけを調べました。")
        return
    s2 = bool(serre_bound(context.module, 2, calculator, equi))
    tally.equal("M が CM <=> 等次元・K(M) が CM・S_2", None, int(cm), int(equi and ccm and s2))


def _double_dual_identities(context: CheckContext, level: Optional[int], tally: _Tally) -> None:
    """S_{k+1} (k >= 1) の等次元加群で K^j(K(M)) ≅ Tor^S_{j-t}(M, S) (t-k+1 <= j <= t) を確かめる。

    Tor^S_{j-t}(M, S) は j < t で 0、j = t で M。
    """
    if level is None or level < 2:
        return
    calculator = context.calculator
    t, k = context.dimension, level - 1
    double_family = calculator.deficiency_family(context.canonical)
    for j in range(max(t - k + 1, 0), t):
        double = double_family.get(j) or zero_module(context.ring)
        tally.equal("length K^j(K(M)) = 0 (S_{k+1})", j, calculator.length(double), 0)
    double = double_family.get(t) or zero_module(context.ring)
    evidence = iso_evidence(context.module, double, calculator)
    tally.holds("K(K(M)) ≅ M (S_{k+1})", evidence.verdict is IsoVerdict.CONSISTENT)
    tally.notes.append(f"S_{k + 1} での K(K(M)) と M: {evidence.describe()}")


def check_schenzel_bounds(context: CheckContext) -> CheckOutcome:
    """dim K^j(M) <= j (0 <= j <= t) と dim K(M) = t、CM の同値、指定があれば S_k の次元条件を確かめる。

    等次元で S_2 以上を満たす場合は K(K(M)) と M の一致と、その下の K^j(K(M)) の消滅も確かめる。
    """
    check_id = "schenzel"
    if context.is_zero:
        return skipped(check_id, context.module_id, ZERO_MODULE_NOTE)
    calculator = context.calculator
    t = context.dimension
    tally = _Tally()
    for j in range(t + 1):
        tally.at_most("dim K^j(M) <= j", j, calculator.dimension(context.deficiency(j)), j)
    tally.equal("dim K(M) = t", t, calculator.dimension(context.canonical), t)

    window = Window(0, t)
    equi = is_equidimensional(context.module, calculator, context.equidimensional)
    _cm_equivalence(context, equi, tally)
    level = serre_level(context.module, calculator, equi)
    _double_dual_identities(context, level, tally)

    k = context.serre_k
    if k is None:
        return tally.outcome(check_id, context.module_id, window)
    if equi is None:
        if tally.failed:
            return tally.outcome(check_id, context.module_id, window)
        tally.notes.append(f"等次元性が不明なため S_{k} の条件を判定できません。")
        return CheckOutcome(check_id, context.module_id, Status.UNKNOWN, window, (), tuple(tally.notes))
    if not equi:
        tally.notes.append(f"等次元でないため S_{k} の条件は調べていません。")
        return tally.outcome(check_id, context.module_id, window)
    for j in range(t):
        tally.at_most(f"dim K^j(M) <= j - {k}", j, calculator.dimension(context.deficiency(j)), j - k)
    tally.notes.append(f"Serre 条件の最大値: {level}")
    return tally.outcome(check_id, context.module_id, window)


# ---------------------------------------------------------------------- Bass 数と Betti 数の上界


def check_bass_bounds(context: CheckContext) -> CheckOutcome:
    """μ^j(M) <= Σ_{i=g}^t β_{j-i}(K^i(M))、型の等式、差の下界、型1と巡回性の同値を確かめる。"""
    check_id = "bass"
    if context.is_zero:
        return skipped(check_id, context.module_id, ZERO_MODULE_NOTE)
    g, t, n = context.depth, context.dimension, context.window_bound
    mu = context.bass(context.module, max(n, g + 2))
    betti = {i: context.betti(context.deficiency(i), max(n, 2)) for i in range(g, t + 1)}

    tally = _Tally()
    for j in range(n + 1):
        bound = sum(betti[i][j - i] for i in range(g, t + 1) if j - i >= 0)
        tally.at_most("μ^j(M) <= Σ β_{j-i}(K^i(M))", j, mu[j], bound)

    top = betti[g]
    tally.equal("type(M) = β_0(K^g(M))", g, mu[g], top[0])
    following = context.betti(context.deficiency(g + 1), 0)[0] if g + 1 <= t else 0
    tally.at_least(
        "μ^{g+2} - μ^{g+1} >= β_2(K^g) - β_1(K^g) - β_0(K^{g+1})",
        g + 2,
        mu[g + 2] - mu[g + 1],
        top[2] - top[1] - following,
    )
    tally.equal("type(M) = 1 <=> K^g(M) は巡回", g, int(mu[g] == 1), int(top[0] == 1))
    _type_corollaries(context, top, following, tally)
    return tally.outcome(check_id, context.module_id, Window.up_to(n))


def _type_corollaries(context: CheckContext, top: List[int], following: int, tally: _Tally) -> None:
    """CM 加群での μ^{t+2}(K(M)) - μ^{t+1}(K(M)) >= β_2(M) - β_1(M) を確かめる。

    id 有限での β_0(K^{g+1}) と β_2(K^g) - β_1(K^g)、pd 有限での β_1 と β_2 は値の注記だけにする。
    """
    calculator = context.calculator
    g, t = context.depth, context.dimension
    if g == t:
        beta = context.betti(context.module, 2)
        mu_k = context.bass(context.canonical, t + 2)
        tally.at_least(
            "M が CM: μ^{t+2}(K(M)) - μ^{t+1}(K(M)) >= β_2(M) - β_1(M)",
            t + 2,
            mu_k[t + 2] - mu_k[t + 1],
            beta[2] - beta[1],
        )
        if pd_finite(context.module, calculator).finite:
            tally.notes.append(f"参考 (CM かつ pd 有限): β_1(M) = {beta[1]}, β_2(M) = {beta[2]}")
    if id_finite(context.module, calculator).finite:
        tally.notes.append(
            f"参考 (id 有限): β_0(K^(g+1)(M)) = {following}, β_2(K^g(M)) - β_1(K^g(M)) = {top[2] - top[1]}"
        )


def check_betti_bounds(context: CheckContext) -> CheckOutcome:
    """β_j(M) <= Σ_{i=g}^t μ^{j+i}(K^i(M)) と μ^0(K(M)) の値、t ごとの β と μ(K(M)) の差の関係を確かめる。"""
    check_id = "betti"
    if context.is_zero:
        return skipped(check_id, context.module_id, ZERO_MODULE_NOTE)
    g, t, n = context.depth, context.dimension, context.window_bound
    beta = context.betti(context.module, max(n, 2))
    mu = {i: context.bass(context.deficiency(i), max(n + i, 2)) for i in range(g, t + 1)}

    tally = _Tally()
    for j in range(n + 1):
        bound = sum(mu[i][j + i] for i in range(g, t + 1))
        tally.at_most("β_j(M) <= Σ μ^{j+i}(K^i(M))", j, beta[j], bound)

    canonical = mu[t]
    tally.equal("μ^0(K(M)) = β_{-t}(M)", 0, canonical[0], beta[0] if t == 0 else 0)
    drop = canonical[2] - canonical[1]
    previous = mu[t - 1][0] if t - 1 >= g else 0
    if t == 0:
        tally.equal("β_2(M) - β_1(M) = μ^2(K(M)) - μ^1(K(M))", 2, beta[2] - beta[1], drop)
    elif t == 1:
        tally.at_least(
            "β_1(M) - β_0(M) >= μ^2(K(M)) - μ^1(K(M)) - μ^0(K^0(M))", 1, beta[1] - beta[0], drop - previous
        )
    elif t == 2:
        tally.at_least("β_0(M) >= μ^2(K(M)) - μ^1(K(M)) - μ^0(K^1(M))", 0, beta[0], drop - previous)
    else:
        tally.at_least("μ^0(K^{t-1}(M)) >= μ^2(K(M)) - μ^1(K(M))", t - 1, previous, drop)
    return tally.outcome(check_id, context.module_id, Window.up_to(n))


# ---------------------------------------------------------------------- Cohen-Macaulay 型の等式


def _foxby_hypothesis(context: CheckContext) -> Optional[str]:
    """等式族が使える仮定を満たさなければその理由を返す。"""
    calculator = context.calculator
    if is_cohen_macaulay(context.module, calculator):
        return None
    if not is_generalized_cm(context.module, calculator):
        return "Cohen-Macaulay でも一般化 Cohen-Macaulay でもありません。"
    if not is_cohen_macaulay(context.canonical, calculator):
        return "K(M) が Cohen-Macaulay ではありません。"
    for j in (0, 1):
        if not _positive_depth(calculator, context.deficiency(j)):
            return f"depth K^{j}(M) = 0 です。"
    return None


def check_foxby_cm(context: CheckContext) -> CheckOutcome:
    """β_j(M) = μ^{j+t}(K(M)) と μ^j(M) = β_{j-t}(K(M))、K(M) の CM 性、M ≅ K(K(M)) の証拠を確かめる。"""
    check_id = "foxby"
    if context.is_zero:
        return skipped(check_id, context.module_id, ZERO_MODULE_NOTE)
    reason = _foxby_hypothesis(context)
    if reason is not None:
        return skipped(check_id, context.module_id, reason)

    calculator = context.calculator
    t, n = context.dimension, context.window_bound
    canonical = context.canonical
    beta, mu = context.betti(context.module, n), context.bass(context.module, n)
    beta_k, mu_k = context.betti(canonical, n), context.bass(canonical, n + t)

    tally = _Tally()
    for j in range(n + 1):
        tally.equal("β_j(M) = μ^{j+t}(K(M))", j, beta[j], mu_k[j + t])
        tally.equal("μ^j(M) = β_{j-t}(K(M))", j, mu[j], beta_k[j - t] if j >= t else 0)
    tally.equal("dim K(M) = t", t, calculator.dimension(canonical), t)
    tally.holds("K(M) は Cohen-Macaulay", is_cohen_macaulay(canonical, calculator))

    double = calculator.deficiency_module(canonical, t)
    evidence = iso_evidence(context.module, double, calculator)
    tally.holds("M ≅ K(K(M))", evidence.verdict is IsoVerdict.CONSISTENT)
    tally.notes.append(f"M と K(K(M)): {evidence.describe()}")
    return tally.outcome(check_id, context.module_id, Window.up_to(n))


# ---------------------------------------------------------------------- 一般化 Cohen-Macaulay の構造


def _sequence_identity(context: CheckContext, double: SubquotientModule) -> Tuple[HilbertData, HilbertData]:
    """0 -> K^0(K^0 M) -> M -> K(K(M)) -> K^0(K^1 M) -> 0 の両辺の Hilbert データ。"""
    calculator = context.calculator
    s = context.ring.num_variables
    first = _deficiency_or_zero(calculator, context.deficiency(0), 0)
    last = _deficiency_or_zero(calculator, context.deficiency(1), 0)
    numerator: Dict[int, int] = {}
    for sign, module in ((1, first), (1, double), (-1, last)):
        for exponent, coefficient in calculator.hilbert(module).numerator:
            numerator[exponent] = numerator.get(exponent, 0) + sign * coefficient
    return calculator.hilbert(context.module), HilbertData.from_numerator(numerator, s)


def check_gcm_structure(context: CheckContext) -> CheckOutcome:
    """一般化 Cohen-Macaulay 加群の K(M) とその不足加群の構造を t で場合分けして確かめる。"""
    check_id = "gcm"
    if context.is_zero:
        return skipped(check_id, context.module_id, ZERO_MODULE_NOTE)
    calculator = context.calculator
    if not is_generalized_cm(context.module, calculator):
        return skipped(check_id, context.module_id, "一般化 Cohen-Macaulay ではありません。")

    t = context.dimension
    canonical = context.canonical
    double_family = calculator.deficiency_family(canonical)
    tally = _Tally()

    def double(index: int) -> SubquotientModule:
        return double_family.get(index) or zero_module(context.ring)

    if t == 0:
        tally.equal("length K^0(K(M)) = length M", 0, calculator.length(double(0)), calculator.length(context.module))
    else:
        tally.equal("length K^0(K(M)) = 0", 0, calculator.length(double(0)), 0)
        tally.at_least("depth K(M) > 0", 0, calculator.depth(canonical), 1)
    if t >= 2:
        tally.equal("length K^1(K(M)) = 0", 1, calculator.length(double(1)), 0)
        tally.at_least("depth K(M) > 1", 1, calculator.depth(canonical), 2)
    if t >= 3:
        for j in range(1, t - 1):
            tally.equal(
                "length K^{t-j}(K(M)) = length K^0(K^{j+1}(M))",
                j,
                calculator.length(double(t - j)),
                calculator.length(_deficiency_or_zero(calculator, context.deficiency(j + 1), 0)),
            )
    if t in (1, 2):
        tally.holds("K(M) は Cohen-Macaulay", is_cohen_macaulay(canonical, calculator))
    tally.holds("K(M) は一般化 Cohen-Macaulay", is_generalized_cm(canonical, calculator))

    radius = context.ring.num_variables + max(
        (abs(d) for d in calculator.presentation(context.module).generator_twists), default=0
    )
    if t >= 1:
        left, right = _sequence_identity(context, double(t))
        shift = aligned_series(left, right, radius)
        if tally.holds("H(M) = H(K^0K^0M) + H(KKM) - H(K^0K^1M)", shift is not None):
            tally.notes.append(f"完全列の Hilbert 恒等式はひねり {shift} で一致しました。")

    if _positive_depth(calculator, context.deficiency(0)) and _positive_depth(calculator, context.deficiency(1)):
        evidence = iso_evidence(context.module, double(t), calculator, radius)
        tally.holds("M ≅ K(K(M))", evidence.verdict is IsoVerdict.CONSISTENT)
        tally.notes.append(f"M と K(K(M)): {evidence.describe()}")
    return tally.outcome(check_id, context.module_id, Window(0, t))


# ---------------------------------------------------------------------- 末尾の等式


FinitenessTest = Callable[[SubquotientModule, InvariantCalculator], FinitenessResult]


def _all_finite(context: CheckContext, indices: range, test: FinitenessTest) -> Tuple[bool, List[int]]:
    failing = [i for i in indices if not test(context.deficiency(i), context.calculator).finite]
    return not failing, failing


def _two_line(context: CheckContext) -> bool:
    g, t = context.depth, context.dimension
    return all(context.calculator.is_zero(context.deficiency(i)) for i in range(t + 1) if i not in (g, t))


def check_tail_equalities(context: CheckContext) -> CheckOutcome:
    """有限性の仮定の下で、閾値より先の番号での Bass 数と Betti 数の等式を確かめる。

    4つの部分検査はそれぞれ仮定を満たさなければ理由を記録して飛ばす。
    すべて飛ばした場合は SKIP。
    """
    check_id = "tail"
    if context.is_zero:
        return skipped(check_id, context.module_id, ZERO_MODULE_NOTE)
    g, t = context.depth, context.dimension
    s, depth_r = context.ring.num_variables, context.ring_depth
    canonical = context.canonical
    tally = _Tally()
    window: Optional[Window] = None
    degenerate = False

    def use(part: Window, label: str) -> None:
        nonlocal window
        window = part if window is None else window.span(part)
        _LOGGER.debug("%s: %s (%s)", context.module_id, label, part.describe())
        tally.notes.append(f"{label}: {part.describe()}")

    ok, failing = _all_finite(context, range(g, t), pd_finite)
    if ok:
        part = Window.beyond(depth_r + t)
        mu = context.bass(context.module, part.upper)
        beta_k = context.betti(canonical, part.upper)
        for j in part.indices():
            tally.equal("μ^j(M) = β_{j-t}(K(M))", j, mu[j], beta_k[j - t] if j >= t else 0)
        use(part, "Bass 数の末尾")
    else:
        tally.notes.append(f"Bass 数の末尾: pd K^i(M) が無限 (i = {failing})")

    ok, failing = _all_finite(context, range(g, t), id_finite)
    if ok:
        # 被覆の次元 s は変数の個数。
        part = Window.beyond(max(s + depth_r - t - g, depth_r - g + 1))
        beta = context.betti(context.module, part.upper)
        mu_k = context.bass(canonical, part.upper + t)
        for j in part.indices():
            tally.equal("β_j(M) = μ^{j+t}(K(M))", j, beta[j], mu_k[j + t])
        use(part, f"Betti 数の末尾 (s = {s})")
    else:
        tally.notes.append(f"Betti 数の末尾: id K^i(M) が無限 (i = {failing})")

    if not _two_line(context):
        tally.notes.append("2本の不足加群: K^i(M) ≠ 0 となる i が g, t 以外にあります。")
    elif g == t:
        degenerate = True
        tally.notes.append("2本の不足加群: g = t なので等式は自明です。")
    else:
        top = context.deficiency(g)
        id_m = id_finite(context.module, context.calculator)
        if id_m.finite:
            part = Window.beyond(depth_r - g + 1)
            beta_top = context.betti(top, part.upper)
            beta_k = context.betti(canonical, part.upper)
            for j in part.indices():
                shifted = j + g - t - 1
                tally.equal("β_j(K^g(M)) = β_{j+g-t-1}(K(M))", j, beta_top[j], beta_k[shifted] if shifted >= 0 else 0)
            use(part, "2本の不足加群 (id 有限)")
        else:
            tally.notes.append("2本の不足加群 (id 有限): id M が無限")

        pd_m = pd_finite(context.module, context.calculator)
        if pd_m.finite and pd_m.value is not None:
            part = Window.beyond(int(pd_m.value) + max(g, 1))
            mu_top = context.bass(top, part.upper)
            mu_k = context.bass(canonical, part.upper - g + t + 1)
            for j in part.indices():
                tally.equal("μ^j(K^g(M)) = μ^{j-g+t+1}(K(M))", j, mu_top[j], mu_k[j - g + t + 1])
            use(part, "2本の不足加群 (pd 有限)")
        else:
            tally.notes.append("2本の不足加群 (pd 有限): pd M が無限")

    if window is None and not degenerate:
        return CheckOutcome(check_id, context.module_id, Status.SKIP, None, (), tuple(tally.notes))
    return tally.outcome(check_id, context.module_id, window)


# ---------------------------------------------------------------------- 環の完全交叉性


def check_ci_characterization(context: CheckContext) -> CheckOutcome:
    """μ^2(k) - μ^1(k) = C(e,2) - d と完全交叉性の同値、β_1(k) = e などを確かめる。"""
    check_id = "ci"
    calculator = context.calculator
    ring = context.ring
    e, d = ring.num_variables, calculator.ring_dimension(ring)
    field = residue_field(ring)
    mu = calculator.bass_numbers(field, 2)
    beta = calculator.betti_numbers(field, 2)
    ci = is_complete_intersection(ring, calculator)

    tally = _Tally()
    tally.equal("μ^2(k) - μ^1(k) = C(e,2) - d <=> 完全交叉", None, int(mu[2] - mu[1] == comb(e, 2) - d), int(ci))
    tally.equal("β_1(k) = e", 1, beta[1], e)
    tally.equal("β_2(k) = C(e,2) + e - d <=> 完全交叉", 2, int(beta[2] == comb(e, 2) + e - d), int(ci))
    for i in range(3):
        tally.equal("μ^i(k) = β_i(k)", i, mu[i], beta[i])
    generators = len(minimal_ideal_generators(ring, calculator)) if ring.is_quotient else 0
    tally.notes.append(
        f"e = {e}, d = {d}, μ^1 = {mu[1]}, μ^2 = {mu[2]}, β_2 = {beta[2]}, I の極小生成元 = {generators}"
    )
    return tally.outcome(check_id, context.module_id, Window(0, 2))


# ---------------------------------------------------------------------- 有限性の移行


def check_finiteness_transfer(context: CheckContext) -> CheckOutcome:
    """不足加群の pd / id の有限性から M の id / pd の有限性、R の CM 性、自由性を導けるか確かめる。"""
    check_id = "finiteness"
    if context.is_zero:
        return skipped(check_id, context.module_id, ZERO_MODULE_NOTE)
    calculator = context.calculator
    module, ring = context.module, context.ring
    g, t = context.depth, context.dimension
    indices = range(g, t + 1)
    tally = _Tally()
    checked = False

    pd_all, pd_failing = _all_finite(context, indices, pd_finite)
    if pd_all:
        checked = True
        result = id_finite(module, calculator)
        tally.record("id M < ∞", result.index, result.witness, 0, result.finite)
        tally.equal("R は Cohen-Macaulay", None, context.ring_depth, calculator.ring_dimension(ring))
    else:
        tally.notes.append(f"pd K^i(M) が無限 (i = {pd_failing})")

    id_all, id_failing = _all_finite(context, indices, id_finite)
    if id_all:
        checked = True
        result = pd_finite(module, calculator)
        tally.record("pd M < ∞", result.index, result.witness, 0, result.finite)
        d = calculator.ring_dimension(ring)
        target = direct_sum(module, ring_module(ring))
        vanishing = all(calculator.is_zero(calculator.ext_module(module, target, j)) for j in range(1, d + 1))
        if vanishing:
            tally.holds("M は自由", calculator.presentation(module).num_relations == 0)
        else:
            tally.notes.append("Ext^j(M, M ⊕ R) ≠ 0 となる 1 <= j <= dim R があるため自由性は調べていません。")
    else:
        tally.notes.append(f"id K^i(M) が無限 (i = {id_failing})")

    if not checked:
        state = "有限" if id_finite(module, calculator).finite else "無限"
        tally.notes.append(f"参考: id M は{state}")
        return CheckOutcome(check_id, context.module_id, Status.SKIP, None, (), tuple(tally.notes))
    return tally.outcome(check_id, context.module_id, Window(g, t))


# ---------------------------------------------------------------------- 問いの探索


def _question(
    check_id: str,
    context: CheckContext,
    side: FinitenessTest,
    family_test: FinitenessTest,
    labels: Tuple[str, str],
) -> CheckOutcome:
    calculator = context.calculator
    g, t = context.depth, context.dimension
    left = side(context.module, calculator)
    witnesses = [Witness(left.index, int(left.finite), left.witness, labels[0])]
    right = True
    for i in range(g, t + 1):
        result = family_test(context.deficiency(i), calculator)
        right &= result.finite
        witnesses.append(Witness(i, int(result.finite), result.witness, labels[1].format(i=i)))
    agree = left.finite == right
    status = Status.AGREE if agree else Status.COUNTEREXAMPLE
    note = f"左辺 = {left.finite}, 右辺 = {right}"
    return CheckOutcome(check_id, context.module_id, status, Window(g, t), tuple(witnesses), (note,))


def explore_questions(context: CheckContext) -> List[CheckOutcome]:
    """id M < ∞ ⟺ すべての pd K^i(M) < ∞、pd M < ∞ ⟺ すべての id K^i(M) < ∞ の両辺を評価する。

    成否は主張せず、両辺が一致すれば AGREE、食い違えば COUNTEREXAMPLE を返す。
    """
    if context.is_zero:
        return [skipped(q, context.module_id, ZERO_MODULE_NOTE) for q in ("question1", "question2")]
    return [
        _question("question1", context, id_finite, pd_finite, ("id M < ∞", "pd K^{i}(M) < ∞")),
        _question("question2", context, pd_finite, id_finite, ("pd M < ∞", "id K^{i}(M) < ∞")),
    ]


MODULE_CHECKS: Dict[str, CheckFunction] = {
    "schenzel": check_schenzel_bounds,
    "bass": check_bass_bounds,
    "betti": check_betti_bounds,
    "foxby": check_foxby_cm,
    "gcm": check_gcm_structure,
    "tail": check_tail_equalities,
    "finiteness": check_finiteness_transfer,
}
RING_CHECKS: Dict[str, CheckFunction] = {"ci": check_ci_characterization}
ALL_CHECKS: Dict[str, CheckFunction] = {**MODULE_CHECKS, **RING_CHECKS}
