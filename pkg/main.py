from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Literal, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError, field_validator

from algebra.scalars import FieldMode
from app_logging.handlers import log_run_event
from controllers.command_controller import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, CommandController
from exceptions import ConfigurationError, CorpusParseError, HalgError
from logging_config import setup_logging

Command = Literal["invariants", "deficiency", "verify", "explore", "oracle"]


class CliConfig(BaseModel):
    """コマンドライン引数を検証した設定。"""

    command: Command
    inputs: List[Path] = Field(min_length=1)
    field: Optional[str] = None
    order: Optional[Literal["degrevlex", "lex"]] = None
    bound: Optional[int] = Field(default=None, ge=0)
    output_format: Optional[Literal["json", "markdown"]] = None
    output: Optional[Path] = None
    jobs: Optional[int] = Field(default=None, ge=0)
    checks: str = "all"
    module: Optional[str] = None
    questions: List[int] = Field(default_factory=lambda: [1, 2])
    log_file: Path = Path("logs") / "halg.log"
    verbose: bool = False

    @field_validator("field")
    @classmethod
    def _valid_field(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            try:
                FieldMode.parse(value)
            except ConfigurationError as exc:
                raise ValueError(str(exc)) from exc
        return value

    @field_validator("questions", mode="before")
    @classmethod
    def _split_questions(cls, value: object) -> object:
        if isinstance(value, str):
            return [piece.strip() for piece in value.split(",") if piece.strip()]
        return value

    @field_validator("questions")
    @classmethod
    def _known_questions(cls, value: List[int]) -> List[int]:
        if not value or any(q not in (1, 2) for q in value):
            raise ValueError("--questions には 1 と 2 のみ指定できます。")
        return sorted(set(value))


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="体の指定 (rational, prime, prime:<p>)。ファイル内の指定より優先する。")
    common.add_argument("--order", choices=["degrevlex", "lex"], help="単項式順序。")
    common.add_argument("--bound", type=int, help="「すべての j」を調べる上限 N。既定は s + dim R + 4。")
    common.add_argument("--format", dest="output_format", choices=["json", "markdown"], help="レポートの形式。")
    common.add_argument("--output", type=Path, help="出力ファイル。省略時は標準出力。")
    common.add_argument("--jobs", type=int, help="並列度。0 はコア数、1 は逐次実行。")
    common.add_argument("--log-file", type=Path, default=Path("logs") / "halg.log", help="ログファイル。")
    common.add_argument("--verbose", action="store_true", help="DEBUG レベルでログを出す。")

    parser = argparse.ArgumentParser(prog="halg", description="次数付き加群の不変量と不足加群の検査を行う。")
    sub = parser.add_subparsers(dest="command", required=True)

    invariants = sub.add_parser("invariants", parents=[common], help="不変量と不足加群の概要を出力する。")
    invariants.add_argument("inputs", nargs="+", type=Path)

    deficiency = sub.add_parser("deficiency", parents=[common], help="K^j(M) の極小表示を出力する。")
    deficiency.add_argument("inputs", nargs=1, type=Path)
    deficiency.add_argument("--module", required=True, help="加群の id。")

    verify = sub.add_parser("verify", parents=[common], help="検査を実行してレポートを書き出す。")
    verify.add_argument("inputs", nargs="+", type=Path)
    verify.add_argument("--checks", default="all", help="カンマ区切りの検査名、または all。")

    explore = sub.add_parser("explore", parents=[common], help="2つの問いの両辺を評価する。")
    explore.add_argument("inputs", nargs="+", type=Path)
    explore.add_argument("--questions", default="1,2", help="評価する問いの番号 (1,2)。")

    oracle = sub.add_parser("oracle", parents=[common], help="次数ごとの線形代数で計算結果を検算する。")
    oracle.add_argument("inputs", nargs="+", type=Path)
    return parser


def _parse_args(argv: Optional[Sequence[str]]) -> CliConfig:
    """引数を解釈して CliConfig にする。

    Raises:
        SystemExit: argparse が使い方の誤りを検出した場合 (コード 2)。
        ValidationError: 値の検証に失敗した場合。
    """
    namespace = _build_parser().parse_args(list(argv) if argv is not None else None)
    values = {key: value for key, value in vars(namespace).items() if value is not None}
    return CliConfig.model_validate(values)


def _dispatch(config: CliConfig, controller: CommandController) -> int:
    report_format = config.output_format or controller.settings.default_format()
    if report_format not in ("json", "markdown"):
        raise ConfigurationError(f"レポートの形式が不正です: {report_format!r}")
    field_flag, order_flag, output = config.field, config.order, config.output
    if config.command == "invariants":
        return controller.invariants(
            config.inputs, field_flag=field_flag, order_flag=order_flag, bound=config.bound, output=output
        )
    if config.command == "deficiency":
        return controller.deficiency(
            config.inputs[0], config.module or "", field_flag=field_flag, order_flag=order_flag, output=output
        )
    if config.command == "oracle":
        return controller.oracle(config.inputs, field_flag=field_flag, order_flag=order_flag, output=output)
    selected: Literal["json", "markdown"] = "markdown" if report_format == "markdown" else "json"
    if config.command == "explore":
        return controller.explore(
            config.inputs,
            questions=config.questions,
            bound=config.bound,
            report_format=selected,
            jobs=config.jobs,
            field_flag=field_flag,
            order_flag=order_flag,
            output=output,
        )
    return controller.verify(
        config.inputs,
        checks=config.checks,
        bound=config.bound,
        report_format=selected,
        jobs=config.jobs,
        field_flag=field_flag,
        order_flag=order_flag,
        output=output,
    )


def main(argv: Optional[Sequence[str]] = None, *, controller: Optional[CommandController] = None) -> int:
    """CLI のエントリポイント。

    Args:
        argv (Optional[Sequence[str]]): コマンドライン引数。None の場合は sys.argv を利用する。
        controller (Optional[CommandController]): テストで差し替えるコントローラ。

    Returns:
        int: 0 = すべて PASS / SKIP、1 = FAIL または COUNTEREXAMPLE あり、2 = 使い方・入力の誤り。
    """
    try:
        config = _parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except ValidationError as exc:
        sys.stderr.write(f"引数が不正です:\n{exc}\n")
        return EXIT_USAGE

    logger = setup_logging(config.log_file.resolve(), level=logging.DEBUG if config.verbose else logging.INFO)
    cli_logger = logging.getLogger("halg.cli")
    log_run_event(f"{config.command}.start", {"inputs": [str(p) for p in config.inputs]})
    controller = controller or CommandController(logger=cli_logger)

    try:
        code = _dispatch(config, controller)
    except FileNotFoundError as exc:
        message = str(exc) if str(exc).startswith("no such file") else f"no such file: {exc.filename or exc}"
        sys.stderr.write(message + "\n")
        return EXIT_USAGE
    except (CorpusParseError, ConfigurationError) as exc:
        cli_logger.error("入力を処理できません: %s", exc, exc_info=exc)
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except HalgError as exc:
        logger.critical("計算中にエラーが発生しました。", exc_info=exc)
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAILURE

    log_run_event(f"{config.command}.finish", {"exit_code": code})
    return code


if __name__ == "__main__":
    raise SystemExit(main())
