"""Thread-count plumbing shared by the instance suites."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "GF2LAB_THREADS"
_override: int | None = None


def set_threads(n: int | None) -> None:
    global _override
    _override = n


def thread_count() -> int:
    if _override:
        return max(1, _override)
    env = os.environ.get(ENV_VAR)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def ordered_map(fn, items):
    """map() across a thread pool; results keep input order."""
    items = list(items)
    workers = min(thread_count(), len(items)) or 1
    if workers == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
