"""設定関連モジュール。"""

from .model import DEFAULT_SETTINGS, FIELD_ENV_VAR, SETTINGS_FILE, SettingsModel

__all__ = [
    "DEFAULT_SETTINGS",
    "FIELD_ENV_VAR",
    "SETTINGS_FILE",
    "SettingsModel",
]
