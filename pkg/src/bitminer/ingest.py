"""Basket-file parsing.

A basket file holds one transaction per line with comma-separated item
names. Item ids are assigned in order of first appearance.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

from .errors import IngestError

logger = logging.getLogger(__name__)

_ASCII_WS = " \t\n\r\x0b\x0c"


@dataclass(frozen=True)
class ItemCatalog:
    names: tuple[str, ...] = ()
    index: dict[str, int] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.index and self.names:
            object.__setattr__(self, "index", {name: i for i, name in enumerate(self.names)})
        if len(self.index) != len(self.names):
            raise ValueError("item names must be unique")

    def __len__(self):
        return len(self.names)

    def __hash__(self):
        return hash(self.names)

    def id_of(self, name: str) -> int:
        return self.index[name]

    def name_of(self, item: int) -> str:
        return self.names[item]

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "ItemCatalog":
        return cls(tuple(names))


@dataclass(frozen=True)
class TransactionDatabase:
    """An ordered list of transactions over a fixed item catalog.

    Each transaction is a tuple of item ids sorted ascending without
    duplicates. The database is immutable and can be shared freely.
    """

    catalog: ItemCatalog
    transactions: tuple[tuple[int, ...], ...]
    # lines that held only separators, e.g. ",,"
    skipped_lines: int = field(default=0, compare=False)

    def __post_init__(self):
        m = len(self.catalog)
        for t in self.transactions:
            if any(b <= a for a, b in zip(t, t[1:])):
                raise ValueError(f"transaction {t!r} is not strictly ascending")
            if t and (t[0] < 0 or t[-1] >= m):
                raise ValueError(f"transaction {t!r} references an item outside the catalog")

    @property
    def n(self) -> int:
        return len(self.transactions)

    @property
    def m(self) -> int:
        return len(self.catalog)

    def names_of(self, items: Iterable[int]) -> list[str]:
        return [self.catalog.names[i] for i in items]

    @classmethod
    def from_item_lists(cls, transactions: Iterable[Iterable[str]]) -> "TransactionDatabase":
        """Build a database from already-split transactions of item names."""
        index: dict[str, int] = {}
        rows = []
        for basket in transactions:
            ids = set()
            for name in basket:
                if name not in index:
                    index[name] = len(index)
                ids.add(index[name])
            rows.append(tuple(sorted(ids)))
        return cls(ItemCatalog(tuple(index), index), tuple(rows))


def _split_line(line: str) -> list[str]:
    return [tok for tok in (part.strip(_ASCII_WS) for part in line.split(",")) if tok]


def parse_baskets(source: BinaryIO | bytes) -> TransactionDatabase:
    """Parse UTF-8 basket lines into a :class:`TransactionDatabase`.

    Blank lines are dropped silently. Lines made only of separators are
    dropped too but counted in ``skipped_lines``. Duplicate names within
    a line collapse to one item.
    """
    data = source if isinstance(source, (bytes, bytearray, memoryview)) else source.read()
    try:
        text = bytes(data).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"invalid UTF-8 at byte offset {exc.start}", offset=exc.start) from exc

    index: dict[str, int] = {}
    rows: list[tuple[int, ...]] = []
    skipped = 0
    for line in text.split("\n"):
        line = line.rstrip("\r")
        if not line.strip(_ASCII_WS):
            continue
        names = _split_line(line)
        if not names:
            skipped += 1
            continue
        ids = set()
        for name in names:
            item = index.get(name)
            if item is None:
                item = index[name] = len(index)
            ids.add(item)
        rows.append(tuple(sorted(ids)))

    if skipped:
        logger.warning("skipped %d line(s) containing only separators", skipped)
    return TransactionDatabase(ItemCatalog(tuple(index), index), tuple(rows), skipped)


def read_baskets(path) -> TransactionDatabase:
    with open(path, "rb") as fh:
        return parse_baskets(fh)


def serialize_baskets(db: TransactionDatabase) -> bytes:
    """Render ``db`` back to basket lines, items in id order."""
    lines = (",".join(db.catalog.names[i] for i in t) for t in db.transactions)
    return "".join(line + "\n" for line in lines).encode("utf-8")


def truncate_db(db: TransactionDatabase, limit: int) -> TransactionDatabase:
    """Keep the first ``limit`` transactions; the catalog is left untouched."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    if limit >= db.n:
        return db
    return TransactionDatabase(db.catalog, db.transactions[:limit], db.skipped_lines)
