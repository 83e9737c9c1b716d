"""Frequent itemset mining with packed Boolean occurrence matrices."""

from .bitmatrix import (
    DENSE,
    SPARSE,
    BitMatrix,
    DenseColumn,
    SparseColumn,
    build_matrix,
    estimate_memory,
    intersect,
    popcount,
    slice_rows,
    support_of,
    union,
)
from .errors import (
    DimensionError,
    IngestError,
    InvalidPartitionError,
    MissingSubsetError,
    OracleScaleError,
    UnknownItemError,
)
from .ingest import ItemCatalog, TransactionDatabase, parse_baskets, read_baskets, truncate_db
from .miner import (
    GEQ,
    GT,
    AssociationRule,
    FrequentItemset,
    MiningConfig,
    RunSummary,
    Threshold,
    generate_rules,
    mine_frequent,
    resolve_threshold,
    summarize_run,
)
from .partition import PartitionPlan, mine_partitioned

__version__ = "0.1.0"
