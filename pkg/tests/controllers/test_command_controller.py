from __future__ import annotations

import io
from pathlib import Path

import pytest

from algebra.monomials import TermOrder
from algebra.scalars import FieldMode
from controllers.command_controller import CommandController, computed_expectations
from exceptions import ConfigurationError
from groebner.quotient import build_ring
from invariants.calculator import InvariantCalculator, ring_module
from invariants.profile import module_profile
from settings.model import SettingsModel

SMALL_CORPUS = """\
field rational
vars x y
ideal x^2, x*y
module R ring
module line coker [x]
"""


def _controller(tmp_path: Path, environ: dict[str, str] | None = None) -> tuple[CommandController, io.StringIO]:
    stream = io.StringIO()
    settings = SettingsModel(storage_path=tmp_path / "settings.json", environ=environ or {})
    return CommandController(settings_model=settings, stream=stream), stream


def test_field_resolution_order(tmp_path: Path) -> None:
    """体の指定はフラグ、環境変数、設定ファイルの順に解決することを確認する。"""
    controller, _ = _controller(tmp_path, {"HALG_FIELD": "rational"})

    # フラグがなければ環境変数を既定値として使う。
    assert controller.resolve_fields(None) == (None, FieldMode.rational())
    # フラグは上書き指定として返す。
    assert controller.resolve_fields("prime:5") == (FieldMode.prime(5), FieldMode.rational())
    with pytest.raises(ConfigurationError):
        controller.resolve_fields("complex")


def test_order_resolution(tmp_path: Path) -> None:
    """単項式順序の解決と不正値の扱いを確認する。"""
    controller, _ = _controller(tmp_path)
    controller.settings.set("order", "lex")

    assert controller.resolve_order(None) is TermOrder.LEX
    assert controller.resolve_order("degrevlex") is TermOrder.DEGREVLEX
    with pytest.raises(ConfigurationError):
        controller.resolve_order("grlex")


def test_computed_expectations() -> None:
    """expect_* と比べる計算値が小文字の文字列になることを確認する。"""
    profile = module_profile(ring_module(build_ring(("x", "y"))), InvariantCalculator(), bound=2)
    values = computed_expectations(profile)

    assert values["depth"] == "2"
    assert values["dim"] == "2"
    assert values["cm"] == "true"
    assert values["pd_finite"] == "true"


def test_oracle_agrees_on_small_corpus(tmp_path: Path) -> None:
    """検算器との突き合わせがすべて一致することを確認する。"""
    path = tmp_path / "small.halg"
    path.write_text(SMALL_CORPUS, encoding="utf-8")
    controller, stream = _controller(tmp_path)

    assert controller.oracle([path]) == 0
    text = stream.getvalue()
    assert "== small:R" in text
    assert "standard monomials: ok" in text
    assert "MISMATCH" not in text


def test_deficiency_output_to_file(tmp_path: Path) -> None:
    """--output 指定時はファイルに書き出すことを確認する。"""
    path = tmp_path / "small.halg"
    path.write_text(SMALL_CORPUS, encoding="utf-8")
    controller, stream = _controller(tmp_path)
    output = tmp_path / "out" / "line.txt"

    assert controller.deficiency(path, "line", output=output) == 0
    assert stream.getvalue() == ""
    assert output.read_text(encoding="utf-8").startswith("== small:line over")
