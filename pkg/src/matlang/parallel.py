"""Optional process-based map used by the grid scans (``--jobs``)."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional


def default_jobs(jobs: Optional[int] = None) -> int:
    if jobs is not None:
        return max(1, jobs)
    env = os.environ.get("MATLANG_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"MATLANG_JOBS must be an integer, got {env!r}") from None
    return 1


def pmap(fn: Callable, items: Iterable, jobs: int = 1) -> List:
    """Ordered map; ``fn`` must be picklable when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))
