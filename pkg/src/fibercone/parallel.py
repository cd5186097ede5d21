"""Order-preserving map with optional thread parallelism.

The worker count only changes scheduling; results are always returned in
input order, so outputs are identical for every setting.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

_jobs = 1


def get_jobs() -> int:
    return _jobs


@contextmanager
def parallelism(jobs: int):
    global _jobs
    old, _jobs = _jobs, max(1, int(jobs))
    try:
        yield
    finally:
        _jobs = old


def pmap(fn, items) -> list:
    items = list(items)
    if _jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=_jobs) as pool:
        return list(pool.map(fn, items))
