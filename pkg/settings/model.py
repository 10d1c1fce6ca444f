from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, cast

from exceptions import ConfigurationError

SETTINGS_FILE = Path.home() / ".halg" / "settings.json"
FIELD_ENV_VAR = "HALG_FIELD"

DEFAULT_SETTINGS: Dict[str, Any] = {
    "field": "prime:32003",
    "order": "degrevlex",
    "jobs": 0,
    "format": "json",
}


class SettingsModel:
    """CLIの既定値を保持するJSON設定モデル。"""

    def __init__(
        self,
        storage_path: Optional[Path] = None,
        environ: Optional[Mapping[str, str]] = None,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        """設定ストレージのパスと環境変数の参照先を初期化する。

        Args:
            storage_path (Optional[Path]): 設定ファイルの保存先。省略時は `~/.halg/settings.json`。
            environ (Optional[Mapping[str, str]]): 参照する環境変数。省略時は `os.environ`。
            logger (Optional[logging.Logger]): ログ出力に使用するロガー。
        """
        self._storage_path = (storage_path or SETTINGS_FILE).expanduser().resolve()
        self._environ = environ if environ is not None else os.environ
        self._logger = logger or logging.getLogger("halg.settings")

    @property
    def storage_path(self) -> Path:
        return self._storage_path

    def load_settings(self) -> Dict[str, Any]:
        """設定ファイルから内容を読み込む。

        Returns:
            Dict[str, Any]: 設定データ。ファイルが存在しない場合は空辞書。

        Raises:
            ConfigurationError: JSONとして読めない場合。
        """
        if not self._storage_path.exists():
            return {}

        try:
            with self._storage_path.open("r", encoding="utf-8") as fp:
                data = json.load(fp)
        except json.JSONDecodeError as exc:
            self._logger.error("設定ファイルの読み込みに失敗しました: %s", self._storage_path, exc_info=exc)
            raise ConfigurationError(f"設定ファイルが不正です: {self._storage_path}") from exc

        if not isinstance(data, dict):
            raise ConfigurationError(f"設定ファイルの形式が不正です: {self._storage_path}")
        return cast(Dict[str, Any], data)

    def save_settings(self, data: Dict[str, Any]) -> None:
        """設定データをファイルへ書き込む。

        Args:
            data (Dict[str, Any]): 保存対象の設定辞書。
        """
        self._storage_path.parent.mkdir(parents=True, exist_ok=True)
        with self._storage_path.open("w", encoding="utf-8") as fp:
            json.dump(data, fp, ensure_ascii=False, indent=2, sort_keys=True)

    def get(self, key: str) -> Any:
        """設定値を取得する。未設定なら既定値を返す。"""
        settings = self.load_settings()
        if key in settings:
            return settings[key]
        return DEFAULT_SETTINGS.get(key)

    def set(self, key: str, value: Any) -> None:
        """設定値を保存する。

        Raises:
            ConfigurationError: 未知のキーを指定した場合。
        """
        if key not in DEFAULT_SETTINGS:
            raise ConfigurationError(f"未知の設定キーです: {key}")
        settings = self.load_settings()
        settings[key] = value
        self.save_settings(settings)

    def default_field(self) -> str:
        """既定の体指定を返す。環境変数 `HALG_FIELD` が設定ファイルより優先される。"""
        from_env = self._environ.get(FIELD_ENV_VAR)
        if from_env:
            self._logger.debug("環境変数%sから体指定を取得しました: %s", FIELD_ENV_VAR, from_env)
            return from_env
        return str(self.get("field"))

    def default_order(self) -> str:
        return str(self.get("order"))

    def default_jobs(self) -> int:
        """既定の並列度を返す。0はマシンのコア数を意味する。"""
        value = self.get("jobs")
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"jobs の設定値が不正です: {value!r}") from exc

    def default_format(self) -> str:
        return str(self.get("format"))
