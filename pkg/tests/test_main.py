from __future__ import annotations

import io
import json
import logging
from collections.abc import Generator
from pathlib import Path

import pytest

from controllers.command_controller import CommandController
from main import main
from settings.model import SettingsModel

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"

SMALL_CORPUS = """\
field rational
vars x y
ideal x^2, x*y
module R ring
module line coker [x]
meta R expect_depth=0 expect_dim=1 expect_type=1
"""


def _cleanup_logger_handlers() -> None:
    """テスト実行後にロガーハンドラを全て除去する。"""
    logger = logging.getLogger("halg")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


@pytest.fixture(autouse=True)
def logger_cleanup() -> Generator[None, None, None]:
    yield
    _cleanup_logger_handlers()


@pytest.fixture()
def stream() -> io.StringIO:
    return io.StringIO()


@pytest.fixture()
def controller(tmp_path: Path, stream: io.StringIO) -> CommandController:
    settings = SettingsModel(storage_path=tmp_path / "settings.json", environ={})
    return CommandController(settings_model=settings, stream=stream)


@pytest.fixture()
def corpus_file(tmp_path: Path) -> Path:
    path = tmp_path / "small.halg"
    path.write_text(SMALL_CORPUS, encoding="utf-8")
    return path


def _run(tmp_path: Path, controller: CommandController, *args: str) -> int:
    return main([*args, "--log-file", str(tmp_path / "logs" / "halg.log")], controller=controller)


def test_invariants_prints_summary(
    tmp_path: Path, controller: CommandController, stream: io.StringIO, corpus_file: Path
) -> None:
    """invariants が加群ごとの要約と指定値の照合を出力することを確認する。"""
    code = _run(tmp_path, controller, "invariants", str(corpus_file), "--bound", "2")

    # 終了コードと出力内容を確認する。
    assert code == 0
    text = stream.getvalue()
    assert "== small:R over" in text
    assert "g=0 t=1 type=1" in text
    assert "expect_depth=0 computed=0" in text
    assert "不一致" not in text
    # ログファイルが作成されていることを確認する。
    assert (tmp_path / "logs" / "halg.log").exists()


def test_missing_file_is_usage_error(
    tmp_path: Path, controller: CommandController, capsys: pytest.CaptureFixture[str]
) -> None:
    """存在しない入力は終了コード 2 と `no such file` になることを確認する。"""
    code = _run(tmp_path, controller, "invariants", str(tmp_path / "missing.halg"))

    assert code == 2
    assert "no such file" in capsys.readouterr().err


@pytest.mark.parametrize(
    "args",
    [
        ["invariants"],
        ["invariants", "x.halg", "--unknown"],
        ["invariants", "x.halg", "--field", "prime:4"],
        ["invariants", "x.halg", "--bound", "-1"],
        ["explore", "x.halg", "--questions", "3"],
        ["nonsense"],
    ],
)
def test_usage_errors(tmp_path: Path, controller: CommandController, args: list[str]) -> None:
    """引数の誤りは終了コード 2 になることを確認する。"""
    assert _run(tmp_path, controller, *args) == 2


def test_help_exits_zero(controller: CommandController) -> None:
    """--help は終了コード 0 で終わることを確認する。"""
    assert main(["--help"], controller=controller) == 0


def test_parse_error_is_reported_with_location(
    tmp_path: Path, controller: CommandController, capsys: pytest.CaptureFixture[str]
) -> None:
    """コーパスの構文エラーは位置つきで報告し、終了コード 2 になることを確認する。"""
    broken = tmp_path / "broken.halg"
    broken.write_text("field rational\nvars x y\nideal x + 1\n", encoding="utf-8")

    assert _run(tmp_path, controller, "invariants", str(broken)) == 2
    assert "(line 3, column 7)" in capsys.readouterr().err


def test_unknown_module_for_deficiency(
    tmp_path: Path, controller: CommandController, corpus_file: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    """deficiency で未知の加群を指定すると終了コード 2 になることを確認する。"""
    code = _run(tmp_path, controller, "deficiency", str(corpus_file), "--module", "zz")

    assert code == 2
    assert "no such module: zz" in capsys.readouterr().err


def test_deficiency_prints_presentations(
    tmp_path: Path, controller: CommandController, stream: io.StringIO, corpus_file: Path
) -> None:
    """deficiency が各 K^j(M) の表示と Hilbert データを出力することを確認する。"""
    assert _run(tmp_path, controller, "deficiency", str(corpus_file), "--module", "R") == 0

    text = stream.getvalue()
    assert "depth = 0, dim = 1" in text
    assert "K^0(M): twists" in text
    assert "K^1(M): twists" in text


def test_verify_writes_json_report(tmp_path: Path, controller: CommandController, corpus_file: Path) -> None:
    """verify が JSON レポートを書き出し、すべて PASS なら 0 を返すことを確認する。"""
    report = tmp_path / "out" / "report.json"
    code = _run(
        tmp_path,
        controller,
        "verify",
        str(corpus_file),
        "--checks",
        "schenzel",
        "--bound",
        "2",
        "--jobs",
        "1",
        "--output",
        str(report),
    )

    assert code == 0
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["field"] == "rational"
    assert data["bound"] == 2
    assert data["summary"] == {"pass": 2, "fail": 0, "skip": 0, "unknown": 0}
    assert [e["module"] for e in data["entries"]] == ["small:R", "small:line"]


def test_explore_writes_markdown(tmp_path: Path, controller: CommandController, corpus_file: Path) -> None:
    """explore が Markdown のレポートを書き出すことを確認する。"""
    report = tmp_path / "explore.md"
    code = _run(
        tmp_path,
        controller,
        "explore",
        str(corpus_file),
        "--questions",
        "2",
        "--bound",
        "2",
        "--jobs",
        "1",
        "--format",
        "markdown",
        "--output",
        str(report),
    )

    assert code in (0, 1)
    text = report.read_text(encoding="utf-8")
    assert text.startswith("# halg report")
    assert "question2" in text
    assert "question1" not in text


@pytest.mark.slow
def test_bundled_corpus_verifies(tmp_path: Path, controller: CommandController) -> None:
    """同梱のコーパス全体で全検査が FAIL なしに終わることを確認する。"""
    report = tmp_path / "corpus.json"
    code = _run(tmp_path, controller, "verify", str(CORPUS_DIR), "--checks", "all", "--jobs", "1", "--output", str(report))

    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["summary"]["fail"] == 0
    assert code == 0


@pytest.mark.parametrize("name", ["artinian.halg", "regular.halg"])
def test_bundled_corpus_subset_verifies(tmp_path: Path, controller: CommandController, name: str) -> None:
    """同梱コーパスの一部で全検査が FAIL なしに終わり、計算できない検査もないことを確認する。"""
    report = tmp_path / "subset.json"
    code = _run(
        tmp_path,
        controller,
        "verify",
        str(CORPUS_DIR / name),
        "--checks",
        "all",
        "--bound",
        "2",
        "--jobs",
        "1",
        "--output",
        str(report),
    )

    assert code == 0
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["summary"]["fail"] == 0
    notes = [note for entry in data["entries"] for note in entry["notes"]]
    assert not any(note.startswith("計算できませんでした") for note in notes)


def test_verify_report_is_byte_identical_across_runs(tmp_path: Path, controller: CommandController) -> None:
    """同じ入力で2回 verify すると同じバイト列のレポートになることを確認する。"""
    outputs = []
    for run in ("first", "second"):
        report = tmp_path / f"{run}.json"
        args = ["verify", str(CORPUS_DIR / "regular.halg"), "--checks", "schenzel,betti", "--bound", "2"]
        assert _run(tmp_path, controller, *args, "--jobs", "1", "--output", str(report)) == 0
        outputs.append(report.read_bytes())

    assert outputs[0] == outputs[1]
