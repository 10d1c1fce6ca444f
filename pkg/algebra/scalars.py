from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Literal

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from exceptions import ConfigurationError, InvariantDomainError

DEFAULT_PRIME = 32003

FieldKind = Literal["prime", "rational"]


@lru_cache(maxsize=None)
def _prime_domain(characteristic: int) -> Domain:
    # 剰余類は [0, p) の代表元で保持する。
    return GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class FieldMode:
    """係数体の指定。素体 F_p か有理数体 Q のいずれか。"""

    kind: FieldKind = "prime"
    characteristic: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if self.kind == "prime":
            if self.characteristic < 2 or not isprime(self.characteristic):
                raise ConfigurationError(f"素数ではない標数が指定されました: {self.characteristic}")
        elif self.kind == "rational":
            if self.characteristic != 0:
                raise ConfigurationError("有理数体の標数は0でなければなりません。")
        else:
            raise ConfigurationError(f"未知の体の種類です: {self.kind}")

    @classmethod
    def prime(cls, characteristic: int = DEFAULT_PRIME) -> "FieldMode":
        return cls("prime", characteristic)

    @classmethod
    def rational(cls) -> "FieldMode":
        return cls("rational", 0)

    @classmethod
    def parse(cls, text: str) -> "FieldMode":
        """`rational`、`prime`、`prime:101`、`prime 101` 形式の文字列を解釈する。

        Args:
            text (str): 体の指定文字列。

        Returns:
            FieldMode: 解釈結果。

        Raises:
            ConfigurationError: 書式または標数が不正な場合。
        """
        normalized = text.strip().lower().replace(":", " ")
        parts = normalized.split()
        if parts == ["rational"]:
            return cls.rational()
        if parts and parts[0] == "prime":
            if len(parts) == 1:
                return cls.prime()
            if len(parts) == 2 and parts[1].isdigit():
                return cls.prime(int(parts[1]))
        raise ConfigurationError(f"体の指定を解釈できません: {text!r}")

    @property
    def domain(self) -> Domain:
        """sympy の係数ドメインを返す。"""
        if self.kind == "rational":
            return QQ
        return _prime_domain(self.characteristic)

    def describe(self) -> str:
        """コーパス書式と同じ表記で体を表す。"""
        if self.kind == "rational":
            return "rational"
        return f"prime {self.characteristic}"

    def convert(self, value: Any) -> Any:
        """整数・有理数を係数ドメインの元へ変換する。

        Raises:
            InvariantDomainError: 分母が標数で割り切れる場合。
        """
        domain = self.domain
        rational = QQ.convert(value)
        numerator = domain.convert(int(rational.numerator))
        denominator = domain.convert(int(rational.denominator))
        if not denominator:
            raise InvariantDomainError(f"係数 {value} の分母が標数 {self.characteristic} で割り切れます。")
        return numerator / denominator if rational.denominator != 1 else numerator


def scalar_inverse(field: FieldMode, value: Any) -> Any:
    """零でないスカラーの逆元を返す。

    Raises:
        InvariantDomainError: 零元を渡した場合。
    """
    if not value:
        raise InvariantDomainError("零元の逆元は存在しません。")
    domain = field.domain
    return domain.one / value
