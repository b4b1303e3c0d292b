"""
Field Cache Module

Keeps one FieldCtx per (p, k) for the life of the process so the exp/log and
addition tables are built once per field. Lookups are thread-safe and counted.
"""

import logging
import threading
import time

from ffield import make_field

logger = logging.getLogger(__name__)


class FieldCache:
    """Thread-safe FieldCtx cache with hit/miss statistics."""

    def __init__(self):
        self._fields = {}
        self._cache_lock = threading.Lock()
        self._cache_stats = {
            'hits': 0,
            'misses': 0,
            'last_reset': time.time()
        }

    def get_field(self, p, k=1):
        key = (p, k)
        with self._cache_lock:
            ctx = self._fields.get(key)
            if ctx is not None:
                self._cache_stats['hits'] += 1
                return ctx
            self._cache_stats['misses'] += 1

        # built outside the lock; the first insert wins
        start = time.time()
        ctx = make_field(p, k)
        with self._cache_lock:
            ctx = self._fields.setdefault(key, ctx)
        logger.debug(f"Cached F_{ctx.q} in {time.time() - start:.2f}s")
        return ctx

    def get_cache_stats(self):
        with self._cache_lock:
            stats = self._cache_stats.copy()
            stats['fields'] = sorted(self._fields)
        return stats

    def clear(self):
        with self._cache_lock:
            self._fields.clear()
            self._cache_stats = {
                'hits': 0,
                'misses': 0,
                'last_reset': time.time()
            }
        logger.info("Field cache cleared")


FIELDS = FieldCache()


def get_field(p, k=1):
    return FIELDS.get_field(p, k)
