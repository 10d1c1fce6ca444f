from __future__ import annotations

import sys
from pathlib import Path
from typing import TYPE_CHECKING

import pytest

if TYPE_CHECKING:
    from algebra.ring import RingDescriptor


def pytest_configure() -> None:
    """pytestの初期化時にプロジェクトルートをパスへ追加する。"""
    # プロジェクトルートを特定する。
    project_root = Path(__file__).resolve().parent.parent

    # 既にパスへ追加されていない場合のみ追加する。
    root_str = str(project_root)
    if root_str not in sys.path:
        sys.path.insert(0, root_str)


@pytest.fixture()
def plane() -> RingDescriptor:
    """k[x,y] (F_32003, degrevlex)。"""
    # パス追加後に読み込むため関数内でインポートする。
    from groebner.quotient import build_ring

    return build_ring(("x", "y"))
