"""Exception types raised by bitminer."""


class BitminerError(Exception):
    """Base class for all errors raised by this package."""


class IngestError(BitminerError):
    """Raised when a basket file cannot be decoded."""

    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset


class DimensionError(BitminerError, ValueError):
    """Two columns with different row counts were combined."""


class RepresentationError(BitminerError, ValueError):
    """A dense column was combined with a sparse one."""


class UnknownItemError(BitminerError, KeyError):
    """An item id outside the matrix was requested."""


class MissingSubsetError(BitminerError):
    """Rule generation needed the support of an itemset that was not supplied."""


class InvalidPartitionError(BitminerError, ValueError):
    pass


class OracleScaleError(BitminerError, ValueError):
    pass


class ConfigError(BitminerError, ValueError):
    """A mining configuration violates its invariants."""
