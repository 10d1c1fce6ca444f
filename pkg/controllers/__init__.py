"""CLI のコマンドを実行するコントローラ層モジュール。"""

from .command_controller import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, CommandController, computed_expectations

__all__ = [
    "CommandController",
    "EXIT_FAILURE",
    "EXIT_OK",
    "EXIT_USAGE",
    "computed_expectations",
]
