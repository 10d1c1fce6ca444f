"""極小次数付き自由分解と Betti 表を提供するパッケージ。"""

from .betti import BettiTable, betti_table
from .cache import ResolutionCache
from .resolution import FreeResolution, minimal_free_resolution

__all__ = [
    "BettiTable",
    "FreeResolution",
    "ResolutionCache",
    "betti_table",
    "minimal_free_resolution",
]
