from __future__ import annotations

import logging
import sys
from logging import Logger
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path

DEFAULT_RETENTION_DAYS = 30
APP_LOGGER_NAME = "halg"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s - %(message)s"


def setup_logging(
    log_path: Path,
    retention_days: int = DEFAULT_RETENTION_DAYS,
    level: int = logging.INFO,
) -> Logger:
    """指定されたパスで日次ローテーション付きのロガーを構築する。

    Args:
        log_path (Path): ログを書き出すファイルパス。
        retention_days (int): 保持するログファイル数。デフォルトは30日分。
        level (int): ロガーとハンドラに設定するログレベル。

    Returns:
        Logger: 設定済みの `halg` ロガー。

    Raises:
        ValueError: retention_days が正の値でない場合。
    """
    if retention_days <= 0:
        raise ValueError("保持日数は0より大きくなければなりません。")

    resolved_path = Path(log_path).expanduser().resolve()
    resolved_path.parent.mkdir(parents=True, exist_ok=True)

    logger = logging.getLogger(APP_LOGGER_NAME)
    logger.setLevel(level)
    logger.propagate = False

    # 再設定時は既存ハンドラを閉じてから付け直す。
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")

    file_handler = TimedRotatingFileHandler(
        filename=str(resolved_path),
        when="midnight",
        interval=1,
        backupCount=retention_days,
        encoding="utf-8",
        utc=False,
    )
    file_handler.setLevel(level)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    # 標準出力はレポート専用なのでコンソールログは標準エラーへ送る。
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger
