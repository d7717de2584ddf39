"""Optional process-level parallelism for independent sub-computations.

Results always come back in input order, so the job count never changes
output.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: int | None = None) -> int:
    if jobs is None:
        env = os.environ.get("SPLITKIT_JOBS", "")
        jobs = int(env) if env.strip() else 1
    if jobs < 1:
        raise ValueError("jobs must be a positive integer")
    return jobs


def pmap(fn: Callable[[T], R], items: Iterable[T], jobs: int | None = None) -> list[R]:
    items = list(items)
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
