from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from exceptions import InvariantDomainError
from groebner.engine import GroebnerEngine, ideal_multiples
from groebner.vectors import FreeModule, VectorElem, lead_term
from modcat.module import SubquotientModule

MINUS_INFINITY = float("-inf")
INFINITE = float("inf")
DEFAULT_PREFIX = 12

# 分子多項式は指数 -> 係数 (ローラン多項式) で保持する。
Laurent = Dict[int, int]


def _trim(numerator: Laurent) -> Laurent:
    return {e: c for e, c in sorted(numerator.items()) if c}


def _reduce_by_one_minus_t(numerator: Laurent) -> Tuple[Laurent, int]:
    """分子から (1 - t) を割り切れるだけ割り、商と割った回数を返す。"""
    if not numerator:
        return {}, 0
    low = min(numerator)
    high = max(numerator)
    coefficients = np.array([numerator.get(e, 0) for e in range(low, high + 1)], dtype=object)
    factors = 0
    while coefficients.size and sum(coefficients) == 0:
        # N = (1 - t) Q のとき Q の係数は N の係数の累積和。
        coefficients = np.cumsum(coefficients)[:-1]
        factors += 1
    return _trim({low + i: int(c) for i, c in enumerate(coefficients)}), factors


@dataclass(frozen=True)
class HilbertData:
    """Hilbert 級数 numerator / (1 - t)^denominator_exponent と Hilbert 関数の先頭部分。"""

    numerator: Tuple[Tuple[int, int], ...]
    denominator_exponent: int
    prefix_start: int = 0
    function_prefix: Tuple[int, ...] = ()

    @classmethod
    def from_numerator(
        cls, numerator: Laurent, denominator_exponent: int, prefix_length: int = DEFAULT_PREFIX
    ) -> "HilbertData":
        cleaned = _trim(numerator)
        start = min(cleaned) if cleaned else 0
        data = cls(tuple(cleaned.items()), denominator_exponent, start)
        prefix = tuple(data.value(start + i) for i in range(prefix_length))
        return cls(data.numerator, denominator_exponent, start, prefix)

    @property
    def numerator_dict(self) -> Laurent:
        return dict(self.numerator)

    @property
    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def reduced(self) -> Tuple[Laurent, int]:
        """(1 - t) を約分した分子と、約分後の分母の指数 (= 次元)。"""
        quotient, factors = _reduce_by_one_minus_t(self.numerator_dict)
        return quotient, self.denominator_exponent - factors

    @property
    def dimension(self) -> float:
        if self.is_zero:
            return MINUS_INFINITY
        return self.reduced[1]

    @property
    def multiplicity(self) -> int:
        quotient, _ = self.reduced
        return sum(quotient.values())

    def value(self, degree: int) -> int:
        """Hilbert 関数 H(degree)。"""
        quotient, dim = self.reduced
        if dim <= 0:
            return quotient.get(degree, 0)
        total = 0
        for exponent, coefficient in quotient.items():
            shift = degree - exponent
            if shift >= 0:
                total += coefficient * comb(shift + dim - 1, dim - 1)
        return total

    def values(self, degrees: Iterable[int]) -> List[int]:
        return [self.value(d) for d in degrees]

    @property
    def length(self) -> float:
        """有限長なら長さ、そうでなければ INFINITE。"""
        if self.is_zero:
            return 0
        quotient, dim = self.reduced
        if dim > 0:
            return INFINITE
        return sum(quotient.values())

    def shifted(self, delta: int) -> "HilbertData":
        """M(delta) の Hilbert データ (H'(d) = H(d + delta))。"""
        return HilbertData.from_numerator(
            {e - delta: c for e, c in self.numerator},
            self.denominator_exponent,
            len(self.function_prefix),
        )

    def same_series(self, other: "HilbertData") -> bool:
        return self.reduced == other.reduced


def _numerator_add(a: np.ndarray, b: np.ndarray, shift: int = 0) -> np.ndarray:
    size = max(a.size, b.size + shift)
    result = np.zeros(size, dtype=object)
    result[: a.size] += a
    result[shift : shift + b.size] += b
    return result


def _minimalize(monomials: np.ndarray) -> np.ndarray:
    kept: List[np.ndarray] = []
    for m in sorted(monomials.tolist(), key=lambda row: (sum(row), row)):
        row = np.array(m, dtype=int)
        if any(np.all(row >= g) for g in kept):
            continue
        kept.append(row)
    if not kept:
        return np.zeros((0, monomials.shape[1]), dtype=int)
    return np.array(kept, dtype=int)


def _is_terminal(monomials: np.ndarray) -> bool:
    return int(np.sum(np.count_nonzero(monomials, axis=1) > 1)) <= 1


def _base_numerator(monomials: np.ndarray) -> np.ndarray:
    # 純冪 x_i^{a_i} と高々1つの混合単項式 m のとき
    # N = Π(1 - t^{a_i}) - t^{deg m} Π(1 - t^{a_i - m_i})
    nvars = monomials.shape[1]
    powers: List[Optional[int]] = [None] * nvars
    mixed = None
    for row in monomials:
        support = np.nonzero(row)[0]
        if len(support) == 1:
            powers[int(support[0])] = int(row[support[0]])
        else:
            mixed = row
    result = np.array([1], dtype=object)
    for a in powers:
        if a is not None:
            factor = np.zeros(a + 1, dtype=object)
            factor[0], factor[a] = 1, -1
            result = np.convolve(result, factor)
    if mixed is None:
        return result
    tail = np.zeros(int(mixed.sum()) + 1, dtype=object)
    tail[-1] = 1
    for a, m in zip(powers, mixed.tolist()):
        if a is None:
            continue
        if a <= m:
            return result
        factor = np.zeros(a - m + 1, dtype=object)
        factor[0], factor[a - m] = 1, -1
        tail = np.convolve(tail, factor)
    return _numerator_add(result, -tail)


class _MonomialHilbert:
    """単項式イデアル J に対する H(S/J) の分子を軸変数の再帰で計算する。メモは計算ごと。"""

    def __init__(self, nvars: int) -> None:
        self._nvars = nvars
        self._memo: Dict[Tuple[Tuple[int, ...], ...], np.ndarray] = {}

    def numerator(self, monomials: np.ndarray) -> np.ndarray:
        if monomials.shape[0] == 0:
            return np.array([1], dtype=object)
        if np.any(np.all(monomials == 0, axis=1)):
            return np.array([0], dtype=object)
        monomials = _minimalize(monomials)
        key = tuple(tuple(int(v) for v in row) for row in monomials)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if _is_terminal(monomials):
            result = _base_numerator(monomials)
        else:
            # 混合単項式に最も多く現れる変数を軸にとる。
            mixed = monomials[np.count_nonzero(monomials, axis=1) > 1]
            pivot = int(np.argmax(np.count_nonzero(mixed, axis=0)))
            variable = np.zeros(self._nvars, dtype=int)
            variable[pivot] = 1
            left = np.vstack([monomials[monomials[:, pivot] == 0], variable[None, :]])
            right = np.where(monomials >= variable, monomials - variable, 0)
            # H(S/J) = H(S/(J + x)) + t H(S/(J : x))
            result = _numerator_add(self.numerator(left), self.numerator(right), shift=1)
        self._memo[key] = result
        return result


def _quotient_numerator(
    module: FreeModule, vectors: Sequence[VectorElem], engine: GroebnerEngine
) -> Laurent:
    """S 上の F / U (U は vectors の生成する部分加群) の Hilbert 分子。"""
    nvars = module.ring.num_variables
    basis = engine.reduced_groebner(list(vectors), module) if vectors else None
    leads: Dict[int, List[Tuple[int, ...]]] = {p: [] for p in range(module.rank)}
    if basis is not None:
        for element in basis.elements:
            position, monomial, _ = lead_term(element.components, module.ring.order.key)
            leads[position].append(monomial)
    recursion = _MonomialHilbert(nvars)
    total: Laurent = {}
    for position, monomials in leads.items():
        array = np.array(monomials, dtype=int).reshape(len(monomials), nvars)
        partial = recursion.numerator(array)
        shift = module.degrees[position]
        for exponent, coefficient in enumerate(partial.tolist()):
            if coefficient:
                total[exponent + shift] = total.get(exponent + shift, 0) + int(coefficient)
    return _trim(total)


def hilbert_data(
    module: SubquotientModule,
    engine: Optional[GroebnerEngine] = None,
    prefix_length: int = DEFAULT_PREFIX,
) -> HilbertData:
    """加群の Hilbert 級数を計算する。

    H(M) = H(F / (N + I F)) - H(F / (G + N + I F)) とし、各項は S 上のグレブナー基底の
    先頭項加群から単項式イデアルの再帰で求める。

    Args:
        module (SubquotientModule): 対象の加群。
        engine (Optional[GroebnerEngine]): 使用するエンジン。
        prefix_length (int): 保持する Hilbert 関数の値の個数。

    Returns:
        HilbertData: 分母の指数は変数の個数 s。
    """
    engine = engine or GroebnerEngine(logger=logging.getLogger("halg.modcat"))
    ring = module.ring
    lifted = module.ambient.with_ring(ring.ambient)
    relations = [VectorElem(lifted, dict(v.components)) for v in module.relation_vectors()]
    relations += ideal_multiples(lifted, ring)
    generators = [VectorElem(lifted, dict(v.components)) for v in module.generator_vectors() if not v.is_zero]

    outer = _quotient_numerator(lifted, relations, engine)
    inner = _quotient_numerator(lifted, relations + generators, engine)
    numerator = dict(outer)
    for exponent, coefficient in inner.items():
        numerator[exponent] = numerator.get(exponent, 0) - coefficient
    return HilbertData.from_numerator(numerator, ring.num_variables, prefix_length)


def krull_dimension(module: SubquotientModule, engine: Optional[GroebnerEngine] = None) -> float:
    """Hilbert 級数の t = 1 での極の位数。零加群は MINUS_INFINITY。"""
    return hilbert_data(module, engine).dimension


def length(module: SubquotientModule, engine: Optional[GroebnerEngine] = None) -> float:
    """次元が0以下なら Σ H(d)、そうでなければ INFINITE。"""
    return hilbert_data(module, engine).length


def graded_dual_hilbert(
    target: Union[SubquotientModule, HilbertData], engine: Optional[GroebnerEngine] = None
) -> HilbertData:
    """有限長加群の Matlis 双対の Hilbert データ (H^∨(d) = H(-d))。

    Args:
        target (Union[SubquotientModule, HilbertData]): 加群またはその Hilbert データ。
        engine (Optional[GroebnerEngine]): 加群を渡した場合に使うエンジン。

    Raises:
        InvariantDomainError: 有限長でない場合。
    """
    data = target if isinstance(target, HilbertData) else hilbert_data(target, engine)
    if data.length == INFINITE:
        raise InvariantDomainError("有限長でない加群の双対はとれません。")
    quotient, _ = data.reduced
    return HilbertData.from_numerator(
        {-exponent: coefficient for exponent, coefficient in quotient.items()},
        0,
        len(data.function_prefix) or DEFAULT_PREFIX,
    )
