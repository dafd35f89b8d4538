"""Typed errors shared across the toolkit.

The three error families map onto CLI exit codes: UsageError -> 1,
DataError -> 2, NumericalError -> 3.
"""


class CointkitError(Exception):
    """Base class for every error raised by this package."""


class UsageError(CointkitError):
    """Invalid configuration or an unsupported request."""


class DataError(CointkitError):
    """Malformed, inconsistent, or insufficient input data."""


class NumericalError(CointkitError):
    """Estimation cannot proceed for numerical reasons."""


class NonPositiveValue(DataError):
    """A log transform hit a value <= 0."""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"value {value!r} at position {index} is not strictly positive")


class SeriesTooShort(DataError):
    def __init__(self, message: str):
        super().__init__(message)


class NoOverlap(DataError):
    def __init__(self, message: str = "series have no overlapping date range"):
        super().__init__(message)


class FrequencyMismatch(DataError):
    def __init__(self, a: int, b: int):
        self.frequencies = (a, b)
        super().__init__(f"cannot combine series with frequencies {a} and {b}")


class DimensionMismatch(DataError):
    def __init__(self, message: str):
        super().__init__(message)


class ParseError(DataError):
    """A malformed row in an input file; carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class GapInDates(DataError):
    """Input rows skipped a period; carries the expected and found labels."""

    def __init__(self, expected: str, found: str):
        self.expected = expected
        self.found = found
        super().__init__(f"expected period {expected} but found {found}")


class EmptyFile(DataError):
    def __init__(self, path: str):
        self.path = path
        super().__init__(f"no data rows in {path}")


class RankDeficient(NumericalError):
    """The design matrix is (numerically) rank deficient; names a culprit column."""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"column {column!r} is linearly dependent on earlier columns")


class DegenerateInput(NumericalError):
    """Zero residual variance: the input carries no innovation to test."""

    def __init__(self, message: str = "input has zero innovation variance"):
        super().__init__(message)


class UnsupportedCombination(UsageError):
    def __init__(self, message: str):
        super().__init__(message)


class ConfigError(UsageError):
    def __init__(self, message: str):
        super().__init__(message)


class MissingGuardWarning(CointkitError):
    """An experiment contract required a guard warning that did not fire."""

    def __init__(self, replication: int):
        self.replication = replication
        super().__init__(
            f"replication {replication}: differenced-input guard did not fire on differenced data"
        )
