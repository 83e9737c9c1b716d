"""Depth-first frequent itemset mining over a :class:`BitMatrix`.

Support thresholds are exact: relative thresholds are rationals and are
compared to counts by cross-multiplication, never through floats.
"""
from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from .bitmatrix import DENSE, REPRESENTATIONS, BitMatrix, estimate_memory, intersect, popcount
from .errors import ConfigError, MissingSubsetError

GEQ = "geq"
GT = "gt"
COMPARISONS = (GEQ, GT)

ORDER_ID = "item-id"
ORDER_SUPPORT = "ascending-support"
ORDERS = (ORDER_ID, ORDER_SUPPORT)


@dataclass(frozen=True)
class Threshold:
    """A minimum support, either an absolute count or a fraction of ``n``."""

    value: Fraction
    relative: bool

    def __post_init__(self):
        if self.value < 0:
            raise ConfigError("support threshold must be non-negative")
        if self.relative and self.value > 1:
            raise ConfigError(f"relative support {self.value} is above 1")
        if not self.relative and self.value.denominator != 1:
            raise ConfigError("absolute support must be an integer count")

    @classmethod
    def absolute(cls, count: int) -> "Threshold":
        return cls(Fraction(count), False)

    @classmethod
    def fraction(cls, value) -> "Threshold":
        return cls(Fraction(value), True)

    @classmethod
    def parse(cls, text: str) -> "Threshold":
        """Parse ``"1%"``, ``"0.01"``, ``"1/100"`` or ``"abs:50"``."""
        s = text.strip()
        try:
            if s.startswith("abs:"):
                body = s[4:].strip()
                if not re.fullmatch(r"\d+", body):
                    raise ConfigError(f"absolute support must be a non-negative integer, got {body!r}")
                return cls.absolute(int(body))
            if s.endswith("%"):
                return cls.fraction(Fraction(s[:-1].strip()) / 100)
            return cls.fraction(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"cannot parse support threshold {text!r}") from exc

    def __str__(self):
        if not self.relative:
            return f"abs:{self.value.numerator}"
        return f"{self.value.numerator}/{self.value.denominator}"


@dataclass(frozen=True)
class MiningConfig:
    threshold: Threshold
    comparison: str = GEQ
    max_len: Optional[int] = None
    representation: str = DENSE
    order: str = ORDER_ID

    def __post_init__(self):
        if self.comparison not in COMPARISONS:
            raise ConfigError(f"comparison must be one of {COMPARISONS}")
        if self.max_len is not None and self.max_len < 1:
            raise ConfigError("max_len must be at least 1")
        if self.representation not in REPRESENTATIONS:
            raise ConfigError(f"representation must be one of {REPRESENTATIONS}")
        if self.order not in ORDERS:
            raise ConfigError(f"order must be one of {ORDERS}")


@dataclass(frozen=True)
class FrequentItemset:
    items: tuple[int, ...]
    support_count: int
    n: int = field(compare=False)

    @property
    def relative_support(self) -> Fraction:
        return Fraction(self.support_count, self.n)

    def sort_key(self):
        return (len(self.items), self.items)


@dataclass(frozen=True)
class AssociationRule:
    antecedent: tuple[int, ...]
    consequent: tuple[int, ...]
    support_count: int
    confidence: Fraction
    lift: Fraction


@dataclass(frozen=True)
class RunSummary:
    n_used: int
    threshold: Threshold
    comparison: str
    frequent_count: int
    avg_relative_support: Optional[Fraction]
    elapsed: float
    memory_estimate: int


class SupportPredicate:
    """Decides whether a support count passes a threshold for ``n`` rows.

    Every test reduces to ``count >= min_count``; the cut-off is derived
    with integer arithmetic only. Itemsets with zero support never pass.
    """

    def __init__(self, threshold: Threshold, comparison: str, n: int):
        self.threshold = threshold
        self.comparison = comparison
        self.n = n
        num, den = threshold.value.numerator, threshold.value.denominator
        if threshold.relative:
            # GEQ: count*den >= num*n  ->  count >= ceil(num*n/den)
            # GT:  count*den >  num*n  ->  count >= floor(num*n/den) + 1
            q, r = divmod(num * n, den)
            cut = q + (1 if r else 0) if comparison == GEQ else q + 1
        else:
            cut = num if comparison == GEQ else num + 1
        self.min_count = max(cut, 1)

    def __call__(self, count: int) -> bool:
        return count >= self.min_count

    def __repr__(self):
        return f"SupportPredicate({self.threshold}, {self.comparison}, n={self.n}, min_count={self.min_count})"


def resolve_threshold(config: MiningConfig, n: int) -> SupportPredicate:
    if n < 0:
        raise ValueError("n must be non-negative")
    return SupportPredicate(config.threshold, config.comparison, n)


def canonical(itemsets: Iterable[FrequentItemset]) -> list[FrequentItemset]:
    """Sort by itemset size, then lexicographically by item ids."""
    return sorted(itemsets, key=FrequentItemset.sort_key)


def _grow(prefix, tail, passes, max_len, n, out):
    # tail: (item, column of prefix + item) pairs already known to pass
    for idx, (item, col) in enumerate(tail):
        items = prefix + (item,)
        out.append(FrequentItemset(tuple(sorted(items)), popcount(col), n))
        if max_len is not None and len(items) >= max_len:
            continue
        next_tail = []
        for other, other_col in tail[idx + 1:]:
            joined = intersect(col, other_col)
            if passes(popcount(joined)):
                next_tail.append((other, joined))
        if next_tail:
            _grow(items, next_tail, passes, max_len, n, out)


def _first_level(matrix: BitMatrix, config: MiningConfig, passes: Callable[[int], bool]):
    singles = [(j, col) for j, col in enumerate(matrix.columns) if passes(popcount(col))]
    if config.order == ORDER_SUPPORT:
        singles.sort(key=lambda pair: (popcount(pair[1]), pair[0]))
    return singles


_worker_state: dict = {}


def _init_worker(singles, passes, max_len, n):
    _worker_state.update(singles=singles, passes=passes, max_len=max_len, n=n)


def mine_frequent(matrix: BitMatrix, config: MiningConfig, jobs: int = 1) -> list[FrequentItemset]:
    """Mine every itemset whose support passes the configured threshold.

    Depth-first prefix extension: each frequent prefix keeps its AND-ed
    column, and only extensions that are themselves frequent with the
    prefix are carried into the next level. The result is in canonical
    order (size, then item ids) whatever the traversal order or ``jobs``.
    """
    passes = resolve_threshold(config, matrix.n)
    singles = _first_level(matrix, config, passes)
    if jobs <= 1 or len(singles) < 2:
        out: list[FrequentItemset] = []
        _grow((), singles, passes, config.max_len, matrix.n, out)
        return canonical(out)

    out = []
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=_init_worker, initargs=(singles, passes, config.max_len, matrix.n)
    ) as pool:
        for part in pool.map(_branch, range(len(singles))):
            out.extend(part)
    return canonical(out)


def _branch(idx):
    """Mine all itemsets whose first item in processing order is ``singles[idx]``."""
    st = _worker_state
    singles, passes, max_len, n = st["singles"], st["passes"], st["max_len"], st["n"]
    item, col = singles[idx]
    out = [FrequentItemset((item,), popcount(col), n)]
    if max_len is not None and max_len <= 1:
        return out
    tail = []
    for other, other_col in singles[idx + 1:]:
        joined = intersect(col, other_col)
        if passes(popcount(joined)):
            tail.append((other, joined))
    if tail:
        _grow((item,), tail, passes, max_len, n, out)
    return out


def generate_rules(frequent: Sequence[FrequentItemset], min_confidence) -> list[AssociationRule]:
    """Derive every rule ``A -> Z \\ A`` with confidence at least ``min_confidence``.

    ``frequent`` must be downward closed: every non-empty proper subset of
    every itemset needs its support present. Rules come out grouped by
    their full itemset in canonical order, then by antecedent size and ids.
    """
    min_conf = Fraction(min_confidence)
    support = {fi.items: fi.support_count for fi in frequent}
    rules = []
    for fi in canonical(frequent):
        z = fi.items
        if len(z) < 2:
            continue
        for size in range(1, len(z)):
            for ante in combinations(z, size):
                cons = tuple(i for i in z if i not in ante)
                try:
                    s_ante, s_cons = support[ante], support[cons]
                except KeyError as exc:
                    raise MissingSubsetError(f"support of {exc.args[0]} is missing for itemset {z}") from None
                conf = Fraction(fi.support_count, s_ante)
                if conf < min_conf:
                    continue
                lift = conf * fi.n / s_cons
                rules.append(AssociationRule(ante, cons, fi.support_count, conf, lift))
    return rules


def summarize_run(
    frequent: Sequence[FrequentItemset],
    elapsed: float,
    matrix: BitMatrix,
    config: MiningConfig,
) -> RunSummary:
    count = len(frequent)
    avg = None
    if count:
        avg = Fraction(sum(fi.support_count for fi in frequent), count * matrix.n)
    return RunSummary(
        n_used=matrix.n,
        threshold=config.threshold,
        comparison=config.comparison,
        frequent_count=count,
        avg_relative_support=avg,
        elapsed=elapsed,
        memory_estimate=estimate_memory(matrix),
    )
