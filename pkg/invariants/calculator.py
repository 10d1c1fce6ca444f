from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from algebra.ring import RingDescriptor
from exceptions import EngineAssertionError, InvariantDomainError
from groebner.engine import GroebnerEngine
from invariants.hom import HomTarget, hom_homology
from modcat.hilbert import INFINITE, MINUS_INFINITY, HilbertData, hilbert_data
from modcat.matrix import matrix_from_rows
from modcat.module import SubquotientModule, cokernel, free_module_as_subquotient, zero_module
from modcat.presentation import MinimalPresentation, minimal_presentation
from oracle.degreewise import DegreewiseOracle
from resolve.betti import BettiTable, betti_table
from resolve.cache import ResolutionCache
from resolve.resolution import FreeResolution


def residue_field(ring: RingDescriptor) -> SubquotientModule:
    """剰余体 k = R / (x_1, ..., x_s) を加群として返す。"""
    gens = list(ring.gens())
    matrix = matrix_from_rows(ring, [gens], [0], [1] * len(gens))
    return cokernel(matrix)


def ring_module(ring: RingDescriptor) -> SubquotientModule:
    """R を自分自身上の加群として返す。"""
    return free_module_as_subquotient(ring, (0,))


@dataclass(frozen=True, eq=False)
class DeficiencyFamily:
    """j -> K^j(M) (0 <= j <= t) の族。各加群は極小表示の余核。"""

    depth: float
    dimension: float
    modules: Dict[int, SubquotientModule] = field(default_factory=dict)

    @property
    def canonical(self) -> Optional[SubquotientModule]:
        """標準加群 K(M) = K^t(M)。零加群では None。"""
        if self.dimension == MINUS_INFINITY:
            return None
        return self.modules[int(self.dimension)]

    def get(self, index: int) -> Optional[SubquotientModule]:
        return self.modules.get(index)

    def indices(self) -> List[int]:
        return sorted(self.modules)


class InvariantCalculator:
    """深さ・次元・Betti 数・Bass 数・型・不足加群を計算する。

    極小分解は ResolutionCache で共有し、その他の中間結果は計算器ごとにメモする。
    """

    def __init__(
        self,
        cache: Optional[ResolutionCache] = None,
        *,
        debug: bool = False,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        self._cache = cache or ResolutionCache()
        self._debug = debug
        self._logger = logger or logging.getLogger("halg.invariants")
        self._memo: Dict[Tuple[Any, ...], Any] = {}

    @property
    def cache(self) -> ResolutionCache:
        return self._cache

    @property
    def engine(self) -> GroebnerEngine:
        return self._cache.engine

    def _memoized(self, key: Tuple[Any, ...], compute: Callable[[], Any]) -> Any:
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    # ------------------------------------------------------------------ 基本量

    def hilbert(self, module: SubquotientModule) -> HilbertData:
        return self._memoized(("hilbert", module.fingerprint()), lambda: hilbert_data(module, self.engine))

    def dimension(self, module: SubquotientModule) -> float:
        return self.hilbert(module).dimension

    def length(self, module: SubquotientModule) -> float:
        return self.hilbert(module).length

    def is_zero(self, module: SubquotientModule) -> bool:
        return self.hilbert(module).is_zero

    def presentation(self, module: SubquotientModule) -> MinimalPresentation:
        return self._memoized(
            ("presentation", module.fingerprint()),
            lambda: minimal_presentation(module, engine=self.engine),
        )

    def minimal_module(self, module: SubquotientModule) -> SubquotientModule:
        """極小表示の余核として表した加群。"""
        return self.presentation(module).as_module()

    def resolution(self, module: SubquotientModule, steps: int) -> FreeResolution:
        return self._cache.resolve(module, steps)

    def s_resolution(self, module: SubquotientModule) -> FreeResolution:
        """S 持ち上げの (完結した) 極小 S 分解。"""
        lifted = module.lift()
        resolution = self._cache.resolve(lifted, lifted.ring.num_variables + 1)
        if not resolution.complete:
            raise EngineAssertionError("多項式環上の分解が完結しませんでした。")
        return resolution

    # ------------------------------------------------------------------ 深さと次元

    def depth(self, module: SubquotientModule) -> float:
        """Auslander-Buchsbaum により g = s - pd_S(M)。零加群は INFINITE。"""
        if self.is_zero(module):
            return INFINITE
        resolution = self.s_resolution(module)
        return module.ring.num_variables - resolution.length

    def depth_and_dim(self, module: SubquotientModule) -> Tuple[float, float]:
        """(g, t) を返す。零加群は (INFINITE, MINUS_INFINITY)。"""
        g, t = self.depth(module), self.dimension(module)
        if self._debug and g != INFINITE:
            bass = self.bass_numbers(module, int(g))
            if any(bass[:-1]) or not bass[-1]:
                raise EngineAssertionError(f"深さ {g} が Bass 数 {bass} と整合しません。")
        if g != INFINITE and g > t:
            raise EngineAssertionError(f"深さ {g} が次元 {t} を超えました。")
        return g, t

    def ring_depth(self, ring: RingDescriptor) -> int:
        return int(self.depth(ring_module(ring)))

    def ring_dimension(self, ring: RingDescriptor) -> int:
        return int(self.dimension(ring_module(ring)))

    def default_bound(self, ring: RingDescriptor) -> int:
        """「すべての j」を調べる窓の上限 N = s + dim R + 4。"""
        return ring.num_variables + self.ring_dimension(ring) + 4

    # ------------------------------------------------------------------ Betti と Bass

    def betti_table(self, module: SubquotientModule, bound: int) -> BettiTable:
        return betti_table(self.resolution(module, bound))

    def betti_numbers(self, module: SubquotientModule, bound: int) -> List[int]:
        """β_0 .. β_bound。"""
        table = self.betti_table(module, bound)
        return [table.total(i) for i in range(bound + 1)]

    def ext_module(self, module: SubquotientModule, other: SubquotientModule, index: int) -> SubquotientModule:
        """Ext^index_R(module, other) を部分商加群として返す。

        Raises:
            InvariantDomainError: 異なる環上の加群を渡した場合。
        """
        if module.ring != other.ring:
            raise InvariantDomainError("Ext の2つの引数は同じ環上の加群でなければなりません。")
        if self.is_zero(other) or self.is_zero(module):
            return zero_module(module.ring)
        resolution = self.resolution(module, index + 1)
        target = HomTarget.from_presentation(self.presentation(other))
        return hom_homology(resolution, target, index, self.engine, check_complex=self._debug)

    def bass_numbers(self, module: SubquotientModule, bound: int) -> List[int]:
        """μ^0 .. μ^bound。μ^i = length Ext^i_R(k, M)。

        Raises:
            EngineAssertionError: Ext^i(k, M) が有限長でない場合。
        """
        key = ("bass", module.fingerprint())
        known: List[int] = self._memo.get(key, [])
        if len(known) > bound:
            return known[: bound + 1]
        if self.is_zero(module):
            return [0] * (bound + 1)

        ring = module.ring
        resolution = self.resolution(residue_field(ring), bound + 1)
        target = HomTarget.from_presentation(self.presentation(module))
        values = list(known)
        for index in range(len(known), bound + 1):
            ext = hom_homology(resolution, target, index, self.engine, check_complex=self._debug)
            data = hilbert_data(ext, self.engine)
            if data.length == INFINITE:
                raise EngineAssertionError(f"Ext^{index}(k, M) が有限長ではありません。")
            values.append(int(data.length))
            self._logger.debug("μ^%d = %d", index, values[-1])
        self._memo[key] = values
        return values

    def type_of(self, module: SubquotientModule) -> int:
        """型 = μ^g。零加群は 0。"""
        g = self.depth(module)
        if g == INFINITE:
            return 0
        return self.bass_numbers(module, int(g))[int(g)]

    # ------------------------------------------------------------------ 不足加群

    def _deficiency(self, module: SubquotientModule, index: int) -> SubquotientModule:
        ring = module.ring
        s = ring.num_variables
        resolution = self.s_resolution(module)
        dual = HomTarget.free(ring.ambient, s)
        homology = hom_homology(resolution, dual, s - index, self.engine, check_complex=self._debug)
        over_s = minimal_presentation(homology, engine=self.engine).as_module()
        over_r = over_s.over(ring)
        return minimal_presentation(over_r, engine=self.engine).as_module()

    def deficiency_module(self, module: SubquotientModule, index: int) -> SubquotientModule:
        """K^index(M) = Ext^{s-index}_S(M, S(-s)) を R 加群として返す。

        Raises:
            InvariantDomainError: index が 0 <= index <= t を満たさない場合。
        """
        t = self.dimension(module)
        if t == MINUS_INFINITY or not 0 <= index <= t:
            raise InvariantDomainError(f"不足加群の番号 {index} が範囲 0..{t} の外です。")
        return self._memoized(
            ("deficiency", module.fingerprint(), index),
            lambda: self._deficiency(module, index),
        )

    def deficiency_family(self, module: SubquotientModule) -> DeficiencyFamily:
        g, t = self.depth_and_dim(module)
        if t == MINUS_INFINITY:
            return DeficiencyFamily(g, t)
        modules = {j: self.deficiency_module(module, j) for j in range(int(t) + 1)}
        if self._debug:
            for j, deficiency in modules.items():
                if j < g and not self.is_zero(deficiency):
                    raise EngineAssertionError(f"K^{j}(M) が深さ未満で零になりません。")
        return DeficiencyFamily(g, t, modules)

    # ------------------------------------------------------------------ 検算

    def koszul_depth(self, module: SubquotientModule, max_degree: Optional[int] = None) -> float:
        """Koszul ホモロジーの消滅から深さを求める (次数ごとの線形代数による検算)。

        Args:
            module (SubquotientModule): 対象の加群。
            max_degree (Optional[int]): 調べる次数の上限。省略時は表示の最大次数 + s + 2。
        """
        if self.is_zero(module):
            return INFINITE
        presentation = self.presentation(module)
        degrees = list(presentation.matrix.target.degrees) + list(presentation.matrix.source.degrees)
        s = module.ring.num_variables
        upper = max_degree if max_degree is not None else max(degrees) + s + 2
        depth = DegreewiseOracle(self._logger).koszul_depth(
            presentation.as_module().lift(), upper, min(degrees)
        )
        return INFINITE if depth is None else depth
