"""Deterministic fan-out: results always come back in task order."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "AAP_WORKERS"


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            n = int(env)
            if n >= 1:
                return n
        except ValueError:
            pass
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], tasks: Sequence[T], workers: int = 1) -> list[R]:
    """Map fn over tasks, preserving input order regardless of worker count.

    workers=1 runs serially in-process; anything larger fans out to a
    process pool. Output is a list aligned with `tasks`, so downstream
    serialization is byte-identical for any worker count.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))
