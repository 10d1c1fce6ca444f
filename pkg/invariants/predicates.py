from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence

from algebra.polynomials import Polynomial
from algebra.ring import RingDescriptor
from groebner.vectors import FreeModule
from invariants.calculator import InvariantCalculator
from modcat.hilbert import INFINITE, MINUS_INFINITY
from modcat.module import SubquotientModule
from modcat.presentation import minimal_generators

_LOGGER = logging.getLogger("halg.invariants")


@dataclass(frozen=True)
class FinitenessResult:
    """射影次元・入射次元の有限性判定。

    Attributes:
        finite (bool): 有限かどうか。
        value (Optional[float]): 有限なときの次元 (Auslander-Buchsbaum / Bass の公式)。
        index (Optional[int]): 判定に使った番号。負の番号になる場合は None。
        witness (int): その番号での Betti 数または Bass 数。
    """

    finite: bool
    value: Optional[float] = None
    index: Optional[int] = None
    witness: int = 0


@dataclass(frozen=True)
class ModuleFlags:
    is_cohen_macaulay: bool
    is_generalized_cm: bool
    is_canonically_cm: bool
    equidimensional: Optional[bool]
    serre_level: Optional[int]
    is_complete_intersection: bool
    pd: FinitenessResult
    id: FinitenessResult


def is_cohen_macaulay(module: SubquotientModule, calculator: InvariantCalculator) -> bool:
    """g = t。零加群は False。"""
    g, t = calculator.depth_and_dim(module)
    return t != MINUS_INFINITY and g == t


def is_generalized_cm(module: SubquotientModule, calculator: InvariantCalculator) -> bool:
    """j < t のすべての K^j(M) が有限長。"""
    t = calculator.dimension(module)
    if t == MINUS_INFINITY:
        return False
    family = calculator.deficiency_family(module)
    return all(calculator.dimension(family.modules[j]) <= 0 for j in range(int(t)))


def is_canonically_cm(module: SubquotientModule, calculator: InvariantCalculator) -> bool:
    """標準加群 K(M) が Cohen-Macaulay。"""
    canonical = calculator.deficiency_family(module).canonical
    return canonical is not None and is_cohen_macaulay(canonical, calculator)


def _minimal_vertex_covers(supports: Sequence[FrozenSet[int]], nvars: int) -> List[FrozenSet[int]]:
    covers: List[FrozenSet[int]] = []
    for size in range(nvars + 1):
        for subset in combinations(range(nvars), size):
            candidate = frozenset(subset)
            if any(cover <= candidate for cover in covers):
                continue
            if all(candidate & support for support in supports):
                covers.append(candidate)
    return covers


def is_equidimensional(
    module: SubquotientModule,
    calculator: InvariantCalculator,
    asserted: Optional[bool] = None,
) -> Optional[bool]:
    """極小素イデアルの次元が揃っているか。

    単項式関係式の巡回加群を単項式環上で考える場合は、零化イデアルの極小素イデアルを
    極小頂点被覆として組合せ的に求める。それ以外は asserted を返す (不明なら None)。
    """
    ring = module.ring
    presentation = calculator.presentation(module)
    if presentation.num_generators != 1:
        return asserted
    monomials: List[Polynomial] = [f for f in ring.ideal_basis]
    for column in presentation.matrix.columns:
        monomials.extend(column.components.values())
    if any(len(f) != 1 for f in monomials):
        return asserted

    supports = [frozenset(i for i, e in enumerate(next(iter(f.keys()))) if e) for f in monomials]
    covers = _minimal_vertex_covers(supports, ring.num_variables)
    computed = len({len(cover) for cover in covers}) <= 1
    if asserted is not None and asserted != computed:
        _LOGGER.warning("等次元性の指定 %s が計算結果 %s と異なります。計算結果を使います。", asserted, computed)
    return computed


def serre_level(
    module: SubquotientModule,
    calculator: InvariantCalculator,
    equidimensional: Optional[bool],
) -> Optional[int]:
    """等次元な加群について、j < t で dim K^j(M) <= j - k を満たす最大の k (0 <= k <= t)。

    等次元性が不明または偽なら None。
    """
    t = calculator.dimension(module)
    if not equidimensional or t == MINUS_INFINITY:
        return None
    family = calculator.deficiency_family(module)
    level = int(t)
    for j in range(int(t)):
        dim = calculator.dimension(family.modules[j])
        if dim != MINUS_INFINITY:
            level = min(level, j - int(dim))
    return max(level, 0)


def serre_bound(
    module: SubquotientModule,
    k: int,
    calculator: InvariantCalculator,
    equidimensional: Optional[bool],
) -> Optional[bool]:
    """条件 S_k を満たすか。等次元性が不明なら None。"""
    t = calculator.dimension(module)
    if not equidimensional or t == MINUS_INFINITY:
        return None
    family = calculator.deficiency_family(module)
    return all(calculator.dimension(family.modules[j]) <= j - k for j in range(int(t)))


def minimal_ideal_generators(ring: RingDescriptor, calculator: InvariantCalculator) -> List[Polynomial]:
    """I の極小生成系。"""
    ambient = FreeModule(ring.ambient, (0,))
    vectors = [ambient.vector({0: f}) for f in ring.ideal]
    return [v.components[0] for v in minimal_generators(vectors, ambient, engine=calculator.engine)]


def is_complete_intersection(ring: RingDescriptor, calculator: InvariantCalculator) -> bool:
    """I の極小生成元の個数が s - dim R に等しいか。"""
    count = len(minimal_ideal_generators(ring, calculator)) if ring.is_quotient else 0
    return count == ring.num_variables - calculator.ring_dimension(ring)


def pd_finite(module: SubquotientModule, calculator: InvariantCalculator) -> FinitenessResult:
    """r = depth R - g として β_{r+1}(M) = 0 なら pd = r。"""
    g = calculator.depth(module)
    if g == INFINITE:
        return FinitenessResult(True, MINUS_INFINITY)
    r = calculator.ring_depth(module.ring) - int(g)
    if r < 0:
        return FinitenessResult(False)
    betti = calculator.betti_numbers(module, r + 1)
    witness = betti[r + 1]
    return FinitenessResult(witness == 0, r if witness == 0 else None, r + 1, witness)


def id_finite(module: SubquotientModule, calculator: InvariantCalculator) -> FinitenessResult:
    """μ^{max(depth R, g)+1}(M) = 0 なら id = depth R。"""
    g = calculator.depth(module)
    if g == INFINITE:
        return FinitenessResult(True, MINUS_INFINITY)
    depth_r = calculator.ring_depth(module.ring)
    index = max(depth_r, int(g)) + 1
    witness = calculator.bass_numbers(module, index)[index]
    return FinitenessResult(witness == 0, depth_r if witness == 0 else None, index, witness)


def predicates(
    module: SubquotientModule,
    calculator: InvariantCalculator,
    equidimensional: Optional[bool] = None,
) -> ModuleFlags:
    """述語をまとめて評価する。equidimensional はコーパスの指定値。"""
    equi = is_equidimensional(module, calculator, equidimensional)
    return ModuleFlags(
        is_cohen_macaulay=is_cohen_macaulay(module, calculator),
        is_generalized_cm=is_generalized_cm(module, calculator),
        is_canonically_cm=is_canonically_cm(module, calculator),
        equidimensional=equi,
        serre_level=serre_level(module, calculator, equi),
        is_complete_intersection=is_complete_intersection(module.ring, calculator),
        pd=pd_finite(module, calculator),
        id=id_finite(module, calculator),
    )
