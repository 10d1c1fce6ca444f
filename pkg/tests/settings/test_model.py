"""設定モジュールのテスト。"""
from __future__ import annotations

from pathlib import Path

import pytest

from exceptions import ConfigurationError
from settings.model import FIELD_ENV_VAR, SettingsModel


@pytest.fixture()
def settings_path(tmp_path: Path) -> Path:
    """設定モデル用の一時ファイルパスを返す。"""
    return tmp_path / "settings.json"


def test_defaults_without_file(settings_path: Path) -> None:
    """設定ファイルが無い場合は既定値を返すことを検証する。"""
    model = SettingsModel(storage_path=settings_path, environ={})

    # 組み込みの既定値になることを確認する。
    assert model.load_settings() == {}
    assert model.default_field() == "prime:32003"
    assert model.default_order() == "degrevlex"
    assert model.default_jobs() == 0
    assert model.default_format() == "json"


def test_set_and_get_persist(settings_path: Path) -> None:
    """保存した値が再読み込み後も取得できることを検証する。"""
    model = SettingsModel(storage_path=settings_path, environ={})
    model.set("field", "rational")
    model.set("jobs", 2)

    # 別インスタンスから読んでも同じ値になることを確認する。
    reloaded = SettingsModel(storage_path=settings_path, environ={})
    assert reloaded.default_field() == "rational"
    assert reloaded.default_jobs() == 2


def test_environment_overrides_settings_file(settings_path: Path) -> None:
    """環境変数の体指定が設定ファイルより優先されることを検証する。"""
    SettingsModel(storage_path=settings_path, environ={}).set("field", "rational")

    model = SettingsModel(storage_path=settings_path, environ={FIELD_ENV_VAR: "prime:101"})
    assert model.default_field() == "prime:101"


def test_unknown_key_is_rejected(settings_path: Path) -> None:
    """未知のキーの保存は例外になることを検証する。"""
    model = SettingsModel(storage_path=settings_path, environ={})
    with pytest.raises(ConfigurationError):
        model.set("api_key", "abc")


def test_broken_json_raises_configuration_error(settings_path: Path) -> None:
    """壊れた設定ファイルは ConfigurationError になることを検証する。"""
    settings_path.write_text("{not json", encoding="utf-8")
    model = SettingsModel(storage_path=settings_path, environ={})

    with pytest.raises(ConfigurationError):
        model.load_settings()


def test_invalid_jobs_value(settings_path: Path) -> None:
    """jobs が整数でない場合は ConfigurationError になることを検証する。"""
    model = SettingsModel(storage_path=settings_path, environ={})
    model.save_settings({"jobs": "many"})

    with pytest.raises(ConfigurationError):
        model.default_jobs()
