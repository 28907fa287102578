"""Ordered first-hit search, optionally spread over worker processes."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "SCF_WORKERS"


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def first_hit(fn: Callable[[T], R | None], items: Iterable[T], workers: int = 1) -> R | None:
    """Return ``fn(item)`` for the first item (in input order) where it is not None.

    Results are consumed in submission order, so the answer does not depend on
    the worker count. ``fn`` must be picklable when ``workers > 1``.
    """
    if workers <= 1:
        for item in items:
            hit = fn(item)
            if hit is not None:
                return hit
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for hit in pool.map(fn, items, chunksize=8):
            if hit is not None:
                pool.shutdown(wait=False, cancel_futures=True)
                return hit
    return None
