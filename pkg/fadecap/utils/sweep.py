"""
Parallel sweep utilities - grid evaluation with ordered results
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Callable, Dict, List, Sequence, TypeVar

import numpy as np
import pyarrow as pa

from fadecap.config import get_numerics

logger = logging.getLogger(__name__)

T = TypeVar("T")


class ParallelSweeper:
    """
    Evaluate a function over a grid of points on a thread pool.

    Features:
    - Results returned in grid order regardless of completion order
    - Row dicts assembled into an Arrow table
    - Seeded substreams for Monte Carlo batches
    """

    def __init__(self, max_workers: int = None):
        self.max_workers = max_workers or get_numerics().workers

    def map(self, func: Callable[[Any], T], points: Sequence[Any]) -> List[T]:
        """
        Apply ``func`` to every point.

        Args:
            func: Function of one grid point
            points: Grid points

        Returns:
            Results in the order of ``points``
        """
        points = list(points)
        if self.max_workers == 1 or len(points) <= 1:
            return [func(p) for p in points]

        results: List[Any] = [None] * len(points)
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = {executor.submit(func, p): i for i, p in enumerate(points)}
            for future in as_completed(futures):
                index = futures[future]
                try:
                    results[index] = future.result()
                except Exception as e:
                    for f in futures:
                        f.cancel()
                    logger.error("Error evaluating grid point %r: %s", points[index], e)
                    raise
        return results

    def sweep(self, func: Callable[[Any], Dict[str, Any]], points: Sequence[Any]) -> pa.Table:
        """Evaluate row-producing ``func`` over ``points`` into an Arrow table."""
        rows = self.map(func, points)
        logger.info("Swept %d grid points with %d workers", len(rows), self.max_workers)
        return records_to_arrow(rows)

    def map_seeded(
        self,
        func: Callable[[np.random.Generator, int], T],
        seed: int,
        sizes: Sequence[int],
    ) -> List[T]:
        """
        Run ``func(rng, size)`` once per batch with independent seeded substreams.

        Substream k always belongs to batch k, so the reduction over the
        returned list is identical for any worker count.
        """
        children = np.random.SeedSequence(seed).spawn(len(sizes))
        jobs = [(np.random.default_rng(child), size) for child, size in zip(children, sizes)]
        return self.map(lambda job: func(*job), jobs)


def batch_sizes(total: int, batch_size: int = None) -> List[int]:
    """Split ``total`` samples into batches of at most ``batch_size``."""
    batch_size = batch_size or get_numerics().mc_batch_size
    full, rest = divmod(total, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def records_to_arrow(records: List[Dict[str, Any]]) -> pa.Table:
    """Convert row dicts to an Arrow table; columns follow the first row's keys."""
    if not records:
        return pa.table({})
    columns = {}
    for key in records[0].keys():
        columns[key] = pa.array([r.get(key) for r in records])
    return pa.table(columns)
