# probarg/core/cache.py
from typing import Any, Dict, Hashable, Optional, Tuple
import logging
import threading
from functools import wraps

logger = logging.getLogger(__name__)

_MISSING = object()


class ResultCache:
    """In-memory cache of per-framework results.

    Keys are (operation, framework) pairs; frameworks are frozen and hashable.
    """

    def __init__(self, max_entries: int = 256):
        self._cache: Dict[Tuple[str, Hashable], Any] = {}
        self._lock = threading.Lock()
        self.max_entries = max_entries

    def get(self, operation: str, key: Hashable) -> Any:
        """Get cached value or the _MISSING sentinel"""
        with self._lock:
            value = self._cache.get((operation, key), _MISSING)
        if value is _MISSING:
            logger.debug(f"Cache miss for {operation}")
        else:
            logger.debug(f"Cache hit for {operation}")
        return value

    def set(self, operation: str, key: Hashable, value: Any) -> None:
        with self._lock:
            if len(self._cache) >= self.max_entries:
                # Drop the oldest entry
                oldest = next(iter(self._cache))
                del self._cache[oldest]
            self._cache[(operation, key)] = value

    def clear(self) -> None:
        """Clear all cache entries"""
        with self._lock:
            self._cache.clear()
            logger.debug("Cleared all cache entries")

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)


# Global cache instance
result_cache = ResultCache()


def cached_per_framework(operation: str, cache: Optional[ResultCache] = None):
    """Decorator memoizing a function whose only argument is a framework"""

    def decorator(func):
        @wraps(func)
        def wrapper(af):
            store = cache if cache is not None else result_cache
            cached = store.get(operation, af)
            if cached is not _MISSING:
                return cached

            result = func(af)
            store.set(operation, af, result)
            return result

        return wrapper

    return decorator


__all__ = ["ResultCache", "result_cache", "cached_per_framework"]
