from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Sequence, Tuple

from sympy.polys.rings import PolyRing

from algebra.monomials import Monomial, TermOrder
from algebra.polynomials import Polynomial
from algebra.scalars import FieldMode
from exceptions import StructuralError


@dataclass(frozen=True)
class RingDescriptor:
    """多項式環 S = k[x1..xs] または剰余環 R = S/I の記述子。

    `ideal` は I の斉次生成元 (次数2以上)、`ideal_basis` はその被約グレブナー基底。
    剰余環の構成は `groebner.quotient.build_ring` を経由する。
    """

    variables: Tuple[str, ...]
    field: FieldMode = field(default_factory=FieldMode)
    order: TermOrder = TermOrder.DEGREVLEX
    ideal: Tuple[Polynomial, ...] = ()
    ideal_basis: Tuple[Polynomial, ...] = ()

    def __post_init__(self) -> None:
        if not self.variables:
            raise StructuralError("変数が1つもありません。")
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError(f"変数名が重複しています: {self.variables}")

    @property
    def poly_ring(self) -> PolyRing:
        """係数体と順序に対応する sympy の多項式環。"""
        return _poly_ring(self.variables, self.field, self.order)

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def is_quotient(self) -> bool:
        return bool(self.ideal_basis)

    @property
    def tag(self) -> str:
        return "R" if self.is_quotient else "S"

    @property
    def ambient(self) -> "RingDescriptor":
        """商をとる前の多項式環 S。"""
        return replace(self, ideal=(), ideal_basis=())

    def gens(self) -> Tuple[Polynomial, ...]:
        return tuple(self.poly_ring.gens)

    def monomial(self, exponents: Monomial) -> Polynomial:
        ring = self.poly_ring
        return ring({tuple(exponents): ring.domain.one})

    def constant(self, value: object) -> Polynomial:
        ring = self.poly_ring
        return ring(self.field.convert(value))

    def from_terms(self, terms: Dict[Monomial, object]) -> Polynomial:
        return self.poly_ring.from_dict(dict(terms))

    def coerce(self, polynomials: Iterable[Polynomial]) -> Tuple[Polynomial, ...]:
        """別順序・別環で作られた多項式をこの環の元へ写す。"""
        ring = self.poly_ring
        return tuple(ring.from_dict(dict(f.items())) for f in polynomials)

    def describe(self) -> str:
        base = f"{self.field.describe()} [{', '.join(self.variables)}]"
        if not self.ideal:
            return base
        gens = ", ".join(format_polynomial(f) for f in self.ideal)
        return f"{base} / ({gens})"


def _poly_ring(variables: Sequence[str], field_mode: FieldMode, order: TermOrder) -> PolyRing:
    # sympy は同じ引数の PolyRing を内部でキャッシュするので元同士を混ぜて使える。
    return PolyRing(",".join(variables), field_mode.domain, order.sympy_order)


def format_polynomial(f: Polynomial, order: TermOrder = TermOrder.DEGREVLEX) -> str:
    """コーパス書式 (`x^2 + 3*x*y`) で多項式を表示する。"""
    if not f:
        return "0"
    ring = f.ring
    names = [str(symbol) for symbol in ring.symbols]
    pieces = []
    for monomial, coeff in sorted(f.items(), key=lambda item: order.key(item[0]), reverse=True):
        value = ring.domain.to_sympy(coeff)
        factors = [
            name if exponent == 1 else f"{name}^{exponent}"
            for name, exponent in zip(names, monomial)
            if exponent
        ]
        negative = bool(value < 0)
        magnitude = -value if negative else value
        if magnitude == 1 and factors:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        pieces.append(("-" if negative else "+", body))

    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
