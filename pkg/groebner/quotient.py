from __future__ import annotations

import logging
from typing import Optional, Sequence

from algebra.monomials import TermOrder
from algebra.polynomials import Polynomial, poly_degree
from algebra.ring import RingDescriptor
from algebra.scalars import FieldMode
from exceptions import StructuralError
from groebner.engine import GroebnerEngine
from groebner.vectors import FreeModule


def build_ring(
    variables: Sequence[str],
    field: Optional[FieldMode] = None,
    order: TermOrder = TermOrder.DEGREVLEX,
    ideal: Sequence[Polynomial] = (),
    engine: Optional[GroebnerEngine] = None,
    logger: Optional[logging.Logger] = None,
) -> RingDescriptor:
    """多項式環 S または剰余環 R = S/I の記述子を構成する。

    Args:
        variables (Sequence[str]): 変数名。
        field (Optional[FieldMode]): 係数体。省略時は F_32003。
        order (TermOrder): 単項式順序。
        ideal (Sequence[Polynomial]): I の生成元。零元は無視する。
        engine (Optional[GroebnerEngine]): 基底計算に使うエンジン。
        logger (Optional[logging.Logger]): ロガー。

    Returns:
        RingDescriptor: I の被約グレブナー基底を保持した記述子。

    Raises:
        HomogeneityError: 斉次でない生成元がある場合。
        StructuralError: 次数2未満の生成元がある場合。
    """
    log = logger or logging.getLogger("halg.groebner")
    ambient = RingDescriptor(tuple(variables), field or FieldMode(), order)
    generators = tuple(f for f in ambient.coerce(ideal) if f)
    for f in generators:
        degree = poly_degree(f)
        if degree is not None and degree < 2:
            raise StructuralError(f"イデアルの生成元は次数2以上でなければなりません: 次数 {degree}")
    if not generators:
        return ambient

    engine = engine or GroebnerEngine(logger=log)
    cyclic = FreeModule(ambient, (0,))
    basis = engine.reduced_groebner([cyclic.vector({0: f}) for f in generators])
    ideal_basis = tuple(e.components[0] for e in basis.elements)
    log.debug("剰余環を構成しました: 生成元数=%d, 基底の大きさ=%d", len(generators), len(ideal_basis))
    return RingDescriptor(ambient.variables, ambient.field, order, generators, ideal_basis)
