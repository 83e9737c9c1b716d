"""Two-phase mining over row-range partitions of the matrix.

Phase 1 mines each block of consecutive transactions on its own with the
same relative threshold. Any itemset that is frequent overall must be
locally frequent in at least one block, so the union of the local results
is a complete candidate set. Phase 2 recounts every candidate on the full
matrix and keeps the ones that pass globally.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .bitmatrix import BitMatrix, slice_rows, support_of
from .errors import InvalidPartitionError
from .miner import FrequentItemset, MiningConfig, Threshold, canonical, mine_frequent, resolve_threshold


@dataclass(frozen=True)
class PartitionPlan:
    k: int
    boundaries: tuple[tuple[int, int], ...]

    @classmethod
    def even(cls, n: int, k: int) -> "PartitionPlan":
        """Split ``[0, n)`` into ``k`` contiguous ranges whose sizes differ by at most one."""
        if k < 1:
            raise InvalidPartitionError(f"partition count must be at least 1, got {k}")
        base, extra = divmod(n, k)
        bounds = []
        start = 0
        for p in range(k):
            stop = start + base + (1 if p < extra else 0)
            bounds.append((start, stop))
            start = stop
        return cls(k, tuple(bounds))


def _relative_config(config: MiningConfig, n: int):
    th = config.threshold
    if th.relative:
        return config
    if n == 0 or th.value > n:
        return None
    return replace(config, threshold=Threshold.fraction(Fraction(th.value.numerator, n)))


def _mine_block(matrix: BitMatrix, config: MiningConfig, start: int, stop: int):
    return [fi.items for fi in mine_frequent(slice_rows(matrix, start, stop), config)]


def local_candidates(matrix: BitMatrix, config: MiningConfig, plan: PartitionPlan, jobs: int = 1) -> set[tuple[int, ...]]:
    """Union of the itemsets frequent within at least one block of ``plan``."""
    local = _relative_config(config, matrix.n)
    if local is None:
        return set()
    candidates: set[tuple[int, ...]] = set()
    if jobs > 1 and plan.k > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_mine_block, matrix, local, a, b) for a, b in plan.boundaries]
            for fut in futures:
                candidates.update(fut.result())
    else:
        for a, b in plan.boundaries:
            candidates.update(_mine_block(matrix, local, a, b))
    return candidates


def mine_partitioned(matrix: BitMatrix, config: MiningConfig, k: int, jobs: int = 1) -> list[FrequentItemset]:
    """Mine ``matrix`` in ``k`` row blocks; the result equals :func:`mine_frequent`."""
    plan = PartitionPlan.even(matrix.n, k)
    candidates = local_candidates(matrix, config, plan, jobs=jobs)
    passes = resolve_threshold(config, matrix.n)
    out = []
    for items in candidates:
        count = support_of(matrix, items)
        if passes(count):
            out.append(FrequentItemset(items, count, matrix.n))
    return canonical(out)
