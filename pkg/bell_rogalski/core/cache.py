"""
core/cache.py

In-memory LRU cache for canonical ideals and other exact, immutable results.

Cache key: sha256(kind + canonical params)
No TTL: cached values never go stale.

Environment variables:
  BR_CACHE_MAX_SIZE   Max in-memory entries (default: 512)
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from collections import OrderedDict
from typing import Any, Callable, Optional

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Configuration from environment
# ---------------------------------------------------------------------------

CACHE_MAX_SIZE = int(os.getenv("BR_CACHE_MAX_SIZE", "512"))


# ---------------------------------------------------------------------------
# Cache key builder
# ---------------------------------------------------------------------------

def make_cache_key(kind: str, **params: Any) -> str:
    """Return a stable hex key for (kind, params); params must be JSON-serialisable."""
    payload = json.dumps({"kind": kind, **params}, sort_keys=True, default=str)
    return hashlib.sha256(payload.encode()).hexdigest()


# ---------------------------------------------------------------------------
# In-memory LRU cache
# ---------------------------------------------------------------------------

class _LRUCache:
    """Thread-safe LRU cache."""

    def __init__(self, max_size: int) -> None:
        self._max_size = max_size
        self._store: OrderedDict[str, Any] = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key: str) -> Optional[Any]:
        with self._lock:
            if key not in self._store:
                return None
            self._store.move_to_end(key)
            return self._store[key]

    def set(self, key: str, value: Any) -> None:
        with self._lock:
            if key in self._store:
                self._store.move_to_end(key)
            self._store[key] = value
            if len(self._store) > self._max_size:
                self._store.popitem(last=False)  # evict oldest

    def clear(self) -> None:
        with self._lock:
            self._store.clear()

    @property
    def size(self) -> int:
        return len(self._store)


# ---------------------------------------------------------------------------
# Ideal cache facade
# ---------------------------------------------------------------------------

class IdealCache:
    """Memo for canonical ideals, keyed on datum fingerprint and degree."""

    def __init__(self, max_size: int = CACHE_MAX_SIZE) -> None:
        self._mem = _LRUCache(max_size)
        self._fill_lock = threading.RLock()
        self._stats_lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: str) -> Optional[Any]:
        value = self._mem.get(key)
        hit = value is not None
        with self._stats_lock:
            if hit:
                self.hits += 1
            else:
                self.misses += 1
        logger.debug("Cache %s: %s", "HIT" if hit else "MISS", key[:16])
        return value

    def set(self, key: str, value: Any) -> None:
        self._mem.set(key, value)

    def get_or_compute(self, key: str, compute: Callable[[], Any]) -> Any:
        """Readers run concurrently; a miss is filled under an exclusive section."""
        value = self.get(key)
        if value is not None:
            return value
        with self._fill_lock:
            value = self._mem.get(key)
            if value is None:
                value = compute()
                self._mem.set(key, value)
        return value

    def clear(self) -> None:
        self._mem.clear()
        with self._stats_lock:
            self.hits = 0
            self.misses = 0

    @property
    def memory_size(self) -> int:
        return self._mem.size

    def stats(self) -> dict:
        with self._stats_lock:
            return {"memory_entries": self.memory_size, "hits": self.hits, "misses": self.misses}


# ---------------------------------------------------------------------------
# Singleton
# ---------------------------------------------------------------------------

_cache: Optional[IdealCache] = None


def get_ideal_cache() -> IdealCache:
    global _cache
    if _cache is None:
        _cache = IdealCache()
    return _cache
