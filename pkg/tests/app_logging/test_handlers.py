from __future__ import annotations

import io
import json
import logging

import pytest

from app_logging.handlers import RUN_EVENT_LOGGER, log_run_event


def _clear_logger(logger: logging.Logger) -> None:
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.propagate = True


def test_log_run_event_outputs_structured_json() -> None:
    """実行イベントが1行のJSONとして出力されることを検証する。"""
    logger = logging.getLogger(RUN_EVENT_LOGGER)
    _clear_logger(logger)

    stream = io.StringIO()
    stream_handler = logging.StreamHandler(stream)
    stream_handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(stream_handler)
    logger.propagate = False

    try:
        log_run_event("check.outcome", {"module": "gcm:ring", "check": "bass", "status": "pass"})
        stream_handler.flush()
        output = stream.getvalue().strip()
    finally:
        logger.removeHandler(stream_handler)
        stream_handler.close()

    # キーが整列したJSONで日本語もそのまま出力されることを確認する。
    payload = json.loads(output)
    assert payload == {"action": "check.outcome", "detail": {"check": "bass", "module": "gcm:ring", "status": "pass"}}
    assert output.index('"action"') < output.index('"detail"')


def test_log_run_event_rejects_empty_action() -> None:
    """空のイベント名は受け付けないことを検証する。"""
    with pytest.raises(ValueError):
        log_run_event("")
