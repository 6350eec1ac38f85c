"""Deterministic exhaustive sweeps, optionally split across processes.

A sweep walks a lexicographically ordered index range in chunks.  The chunk
function returns the first failure it sees as ``(index, ...)`` or None.  The
reported failure is always the one with the smallest index, whatever the
worker count, so results do not depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable


def sweep(chunk_fn: Callable, total: int, chunk_size: int, workers: int = 1, args: tuple = ()):
    bounds = [(lo, min(lo + chunk_size, total)) for lo in range(0, total, chunk_size)]
    if workers <= 1 or len(bounds) <= 1:
        for lo, hi in bounds:
            hit = chunk_fn(lo, hi, *args)
            if hit is not None:
                return hit
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(chunk_fn, lo, hi, *args) for lo, hi in bounds]
        hits = [f.result() for f in futures]
    hits = [h for h in hits if h is not None]
    return min(hits, key=lambda h: h[0]) if hits else None
