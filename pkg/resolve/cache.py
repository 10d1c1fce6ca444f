from __future__ import annotations

import logging
import threading
from typing import Dict, Optional

from groebner.engine import GroebnerEngine
from modcat.module import SubquotientModule
from resolve.resolution import FreeResolution, minimal_free_resolution


class ResolutionCache:
    """セッション内で極小分解を共有するキャッシュ。

    鍵は加群表示の指紋。長く計算済みの分解は短い要求にも使い回す。
    """

    def __init__(
        self,
        engine: Optional[GroebnerEngine] = None,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        self._engine = engine or GroebnerEngine(logger=logging.getLogger("halg.groebner"))
        self._logger = logger or logging.getLogger("halg.resolve")
        self._lock = threading.Lock()
        self._entries: Dict[str, FreeResolution] = {}
        self.hits = 0
        self.misses = 0

    @property
    def engine(self) -> GroebnerEngine:
        return self._engine

    def resolve(self, module: SubquotientModule, max_steps: int) -> FreeResolution:
        """キャッシュを経由して極小分解を返す。"""
        key = module.fingerprint()
        with self._lock:
            cached = self._entries.get(key)
            if cached is not None and (cached.complete or cached.steps >= max_steps):
                self.hits += 1
                return cached.truncated(max_steps)
            self.misses += 1

        # 計算中はロックを保持しない。
        resolution = minimal_free_resolution(module, max_steps, self._engine, self._logger)
        with self._lock:
            current = self._entries.get(key)
            if current is None or resolution.complete or resolution.steps > current.steps:
                self._entries[key] = resolution
        return resolution

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)
