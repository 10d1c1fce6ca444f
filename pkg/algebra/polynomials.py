from __future__ import annotations

from enum import Enum
from typing import Any, List, Optional, Tuple, Union

from sympy.polys.rings import PolyElement

from algebra.monomials import Monomial, TermOrder, monomial_degree
from exceptions import HomogeneityError, StructuralError

# 疎な多項式は sympy の PolyElement (単項式 -> 係数 の辞書) をそのまま使う。
Polynomial = PolyElement
Term = Tuple[Monomial, Any]


class ArithOp(str, Enum):
    ADD = "add"
    MUL = "mul"
    SCALAR_MUL = "scalar_mul"


def poly_degree(f: Polynomial) -> Optional[int]:
    """斉次多項式の全次数を返す。零多項式は None。

    Raises:
        HomogeneityError: 斉次でない場合。
    """
    if not f:
        return None
    degrees = {monomial_degree(m) for m in f.keys()}
    if len(degrees) != 1:
        raise HomogeneityError(f"斉次でない多項式です: {f}")
    return degrees.pop()


def is_homogeneous(f: Polynomial) -> bool:
    if not f:
        return True
    first = monomial_degree(next(iter(f.keys())))
    return all(monomial_degree(m) == first for m in f.keys())


def sorted_terms(f: Polynomial, order: TermOrder) -> List[Term]:
    """項を指定順序で降順に並べて返す。"""
    key = order.key
    return sorted(f.items(), key=lambda item: key(item[0]), reverse=True)


def leading_term(f: Polynomial, order: TermOrder) -> Term:
    """先頭項 (単項式, 係数) を返す。

    Raises:
        StructuralError: 零多項式を渡した場合。
    """
    if not f:
        raise StructuralError("零多項式には先頭項がありません。")
    key = order.key
    monomial = max(f.keys(), key=key)
    return monomial, f[monomial]


def poly_arith(op: ArithOp, f: Polynomial, g: Union[Polynomial, Any]) -> Polynomial:
    """斉次多項式の加法・乗法・スカラー倍を行う。

    Args:
        op (ArithOp): 演算の種類。
        f (Polynomial): 左オペランド。
        g (Union[Polynomial, Any]): 右オペランド。スカラー倍では係数ドメインの元。

    Returns:
        Polynomial: 演算結果。零係数は保持されない。

    Raises:
        StructuralError: 異なる環の多項式を組み合わせた場合。
        HomogeneityError: 次数の異なる非零多項式を加えた場合。
    """
    if op is ArithOp.SCALAR_MUL:
        return f * f.ring.domain.convert(g)

    if not isinstance(g, PolyElement) or g.ring != f.ring:
        raise StructuralError("同じ多項式環の元同士でなければ演算できません。")

    if op is ArithOp.MUL:
        return f * g

    df, dg = poly_degree(f), poly_degree(g)
    if df is not None and dg is not None and df != dg:
        raise HomogeneityError(f"次数 {df} と {dg} の多項式は加えられません。")
    return f + g
