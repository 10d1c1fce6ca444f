from __future__ import annotations

from enum import Enum
from typing import Any, Callable, Tuple

from sympy.polys.orderings import MonomialOrder, grevlex, lex

from exceptions import StructuralError

Monomial = Tuple[int, ...]


class Comparison(Enum):
    """単項式比較の結果。"""

    LT = -1
    EQ = 0
    GT = 1


class TermOrder(str, Enum):
    """大域的な単項式順序。既定は degrevlex。"""

    DEGREVLEX = "degrevlex"
    LEX = "lex"

    @property
    def sympy_order(self) -> MonomialOrder:
        if self is TermOrder.LEX:
            return lex
        return grevlex

    @property
    def key(self) -> Callable[[Monomial], Any]:
        """大きい単項式ほど大きいキーを返すソートキー。"""
        return self.sympy_order

    @classmethod
    def parse(cls, text: str) -> "TermOrder":
        try:
            return cls(text.strip().lower())
        except ValueError as exc:
            raise StructuralError(f"未知の単項式順序です: {text!r}") from exc


def monomial_degree(monomial: Monomial) -> int:
    return sum(monomial)


def compare_monomials(order: TermOrder, a: Monomial, b: Monomial) -> Comparison:
    """単項式 a と b を指定順序で比較する。

    degrevlex では全次数を先に比べ、同次数なら最後の変数の指数が小さい方を大きいとみなす。

    Args:
        order (TermOrder): 使用する単項式順序。
        a (Monomial): 左辺の指数ベクトル。
        b (Monomial): 右辺の指数ベクトル。

    Returns:
        Comparison: a と b の大小関係。

    Raises:
        StructuralError: 指数ベクトルの長さが一致しない場合。
    """
    if len(a) != len(b):
        raise StructuralError(f"指数ベクトルの長さが一致しません: {len(a)} と {len(b)}")

    key = order.key
    ka, kb = key(a), key(b)
    if ka == kb:
        return Comparison.EQ
    return Comparison.GT if ka > kb else Comparison.LT
