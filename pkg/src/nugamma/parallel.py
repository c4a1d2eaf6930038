"""Deterministic parallel Monte Carlo plumbing.

Every experiment derives one child random stream per replicate index
from the master seed, ``SeedSequence(entropy=seed, spawn_key=key)``, so
results are bit-identical for a fixed seed no matter how the replicate
range is partitioned across workers.  Workers receive contiguous index
blocks and results are concatenated in block order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np


def child_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for the child stream addressed by (seed, *key)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)))


def block_ranges(n_items: int, workers: int) -> list[tuple[int, int]]:
    """Contiguous (lo, hi) blocks covering range(n_items)."""
    if n_items <= 0:
        return []
    n_blocks = min(n_items, max(1, workers * 4))
    edges = np.linspace(0, n_items, n_blocks + 1, dtype=int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def run_tasks(fn, args_list, workers: int = 1) -> list:
    """Map ``fn`` over argument tuples, preserving order.

    ``fn`` must be a module-level function when workers > 1 (process
    pools pickle it).  With one worker everything runs in-process.
    """
    if workers <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args_list))
