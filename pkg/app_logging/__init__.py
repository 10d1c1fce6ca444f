"""実行イベントのロギング補助機能パッケージ。"""

from .handlers import log_run_event

__all__ = [
    "log_run_event",
]
