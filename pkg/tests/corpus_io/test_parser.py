from __future__ import annotations

from pathlib import Path

import pytest

from algebra.scalars import FieldMode
from corpus_io.parser import collect_corpus_files, parse_file, parse_input, render_corpus
from exceptions import CorpusParseError

CORPUS_DIR = Path(__file__).resolve().parents[2] / "corpus"

RUNNING_EXAMPLE = """\
# 深さ 0 の1次元環
field rational
vars x y
ideal x^2, x*y
module R ring
module line coker [x]
meta line expect_depth=1 equidimensional=true serre_k=1
"""


def test_parse_running_example() -> None:
    """環と余核の加群、meta 行の指定値を読み取れることを検証する。"""
    entries = parse_input(RUNNING_EXAMPLE, "example")

    assert [e.key for e in entries] == ["example:R", "example:line"]
    assert {e.ring_id for e in entries} == {"example:ring0"}
    ring_entry, line_entry = entries
    assert ring_entry.kind == "ring"
    assert ring_entry.ring.is_quotient
    assert ring_entry.ring.field == FieldMode.rational()
    assert line_entry.kind == "coker"
    assert line_entry.module.generator_degrees == (0,)
    assert line_entry.expectations == {"depth": "1"}
    assert line_entry.equidimensional is True
    assert line_entry.serre_k == 1
    assert ring_entry.equidimensional is None


def test_parse_residue_field_with_default_field() -> None:
    """field 行がなければ既定の F_32003 を使うことを検証する。"""
    entries = parse_input("vars x y\nmodule k coker [x, y]\n", "plain")

    assert entries[0].ring.field == FieldMode.prime(32003)
    assert entries[0].module.relations.source.degrees == (1, 1)


def test_field_precedence() -> None:
    """コマンドラインの指定 > ファイルの指定 > 既定値 の順に優先することを検証する。"""
    text = "field prime 101\nvars x\nmodule m ring\n"
    override = FieldMode.parse("prime:7")
    default = FieldMode.rational()

    assert parse_input(text, field_override=override)[0].ring.field == override
    assert parse_input(text, default_field=default)[0].ring.field == FieldMode.prime(101)
    assert parse_input("vars x\nmodule m ring\n", default_field=default)[0].ring.field == default


@pytest.mark.parametrize(
    ("text", "line", "fragment"),
    [
        ("field rational\nvars x y\nideal x + 1\n", 3, "斉次でない"),
        ("vars x y\nmodule m coker [z]\n", 2, "未知の変数"),
        ("field prime 4\nvars x\n", 1, "体の指定"),
        ("vars x y\nideal x\n", 2, "次数2以上"),
        ("module m ring\n", 1, "vars"),
        ("vars x y\nmodule m coker [x, y; y, x^2]\n", 2, "次数が整合しません"),
        ("vars x y\nmodule m ring\nmeta other a=b\n", 3, "未定義"),
        ("vars x y\nmodule m ring\nmodule m ring\n", 3, "重複"),
        ("vars x y\nmatrix m\n", 2, "未知のキーワード"),
    ],
)
def test_parse_errors_report_location(text: str, line: int, fragment: str) -> None:
    """文法の誤りが行番号つきの CorpusParseError になることを検証する。"""
    with pytest.raises(CorpusParseError) as info:
        parse_input(text)
    assert info.value.line == line
    assert fragment in info.value.message


def test_inhomogeneous_ideal_column() -> None:
    """斉次でない生成元の列番号が生成元の先頭を指すことを検証する。"""
    with pytest.raises(CorpusParseError) as info:
        parse_input("field rational\nvars x y\nideal x + 1\n")
    assert str(info.value) == "斉次でない生成元です。 (line 3, column 7)"


def test_render_corpus_round_trip() -> None:
    """書き戻したコーパスを読み直すと同じ構造になることを検証する。"""
    entries = parse_input(RUNNING_EXAMPLE, "example")
    again = parse_input(render_corpus(entries), "example")

    assert [e.signature() for e in again] == [e.signature() for e in entries]


def test_collect_corpus_files(tmp_path: Path) -> None:
    """ディレクトリからは .halg だけを名前順に集めることを検証する。"""
    (tmp_path / "b.halg").write_text("vars x\nmodule m ring\n", encoding="utf-8")
    (tmp_path / "a.halg").write_text("vars x\nmodule m ring\n", encoding="utf-8")
    (tmp_path / "notes.txt").write_text("ignored", encoding="utf-8")

    assert [p.name for p in collect_corpus_files([tmp_path])] == ["a.halg", "b.halg"]
    with pytest.raises(FileNotFoundError, match="no such file"):
        collect_corpus_files([tmp_path / "missing.halg"])


def test_bundled_corpus_parses() -> None:
    """同梱のコーパスがすべて読めることを検証する。"""
    entries = [e for path in collect_corpus_files([CORPUS_DIR]) for e in parse_file(path)]

    assert len(entries) == 17
    assert len({e.key for e in entries}) == len(entries)
    assert "gcm:ring" in {e.key for e in entries}
