from __future__ import annotations

from typing import Optional


class HalgError(Exception):
    """計算エンジン共通の例外基底クラス。"""


class StructuralError(HalgError):
    """自由加群や指数長など構造の不一致に関する例外。"""


class HomogeneityError(HalgError):
    """斉次性が崩れる入力・演算に関する例外。"""


class ContractViolation(HalgError):
    """複体でない入力など事前条件違反を表す例外。"""


class InvariantDomainError(HalgError):
    """数学的に定義域外の引数を受け取った場合の例外。"""


class EngineAssertionError(HalgError):
    """内部の事後検査が失敗した場合の例外。エンジンの不具合を示す。"""


class ConfigurationError(HalgError):
    """体の指定や設定値が不正な場合の例外。"""


class CorpusParseError(HalgError):
    """コーパス入力の構文エラー。位置情報を保持する。"""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        """メッセージと位置を保持する。

        Args:
            message (str): エラー内容。
            line (int): 1始まりの行番号。
            column (int): 1始まりの列番号。
        """
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"{self.message} (line {self.line}, column {self.column})"


def raise_with_context(message: str, original: Optional[Exception] = None) -> None:
    """受け取った例外に文脈を付与して再送出する。

    Args:
        message (str): 例外に付与する説明メッセージ。
        original (Optional[Exception]): 元となる例外。省略可。

    Raises:
        HalgError: 文脈付きの例外を送出する。
    """
    error = HalgError(message)

    # 元例外が渡された場合はチェーンして情報を保持する。
    if original is not None:
        raise error from original

    raise error
