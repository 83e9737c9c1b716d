"""Reference miner and random databases for cross-checking.

Nothing here touches :mod:`bitminer.bitmatrix`: supports are counted by
scanning transactions for set containment, so a bug in the bit-level code
cannot hide behind a matching bug in its checker.

Random databases come from SplitMix64 (Steele, Lea & Flood 2014)::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    return z ^ (z >> 31)

Cells are visited in row-major order, one draw each. Cell ``(i, j)`` is set
when ``draw * den < num * 2**64`` for density ``num/den``, which is the
exact test ``draw / 2**64 < density``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .errors import OracleScaleError
from .ingest import ItemCatalog, TransactionDatabase
from .miner import FrequentItemset, MiningConfig, canonical, resolve_threshold

MAX_ORACLE_ITEMS = 20

_MASK64 = (1 << 64) - 1


def splitmix64(seed: int) -> Iterator[int]:
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    m: int
    density: Fraction
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "density", Fraction(self.density))
        if not 0 <= self.density <= 1:
            raise ValueError("density must lie in [0, 1]")
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")


def random_db(spec: GeneratorSpec) -> TransactionDatabase:
    """Deterministic random database; empty transactions are kept."""
    num, den = spec.density.numerator, spec.density.denominator
    cut = num << 64
    draws = splitmix64(spec.seed)
    rows = []
    for _ in range(spec.n):
        rows.append(tuple(j for j in range(spec.m) if next(draws) * den < cut))
    catalog = ItemCatalog(tuple(f"i{j}" for j in range(spec.m)))
    return TransactionDatabase(catalog, tuple(rows))


@lru_cache(maxsize=64)
def _support_table(db: TransactionDatabase, max_len: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    baskets = [frozenset(t) for t in db.transactions]
    table = []
    for size in range(1, max_len + 1):
        for itemset in combinations(range(db.m), size):
            wanted = frozenset(itemset)
            table.append((itemset, sum(1 for t in baskets if wanted <= t)))
    return tuple(table)


def brute_force_mine(db: TransactionDatabase, config: MiningConfig) -> list[FrequentItemset]:
    """Enumerate every itemset up to ``max_len`` and keep the ones that pass."""
    if db.m > MAX_ORACLE_ITEMS:
        raise OracleScaleError(f"oracle enumerates 2**m itemsets; m={db.m} exceeds {MAX_ORACLE_ITEMS}")
    max_len = db.m if config.max_len is None else min(config.max_len, db.m)
    passes = resolve_threshold(config, db.n)
    return canonical(
        FrequentItemset(items, count, db.n) for items, count in _support_table(db, max_len) if passes(count)
    )


def support_by_scan(db: TransactionDatabase, itemset) -> int:
    wanted = set(itemset)
    return sum(1 for t in db.transactions if wanted.issubset(t))
