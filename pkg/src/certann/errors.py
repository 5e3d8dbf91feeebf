"""Exception hierarchy for certann.

Errors are grouped into three families so the CLI can map them to exit codes:
configuration problems, bad input data, and broken internal invariants.
"""

from typing import ClassVar


class CertannError(Exception):
    """Base class for every error raised by certann.

    Errors outside the three families are treated as internal failures.
    """

    exit_code: ClassVar[int] = 4


class ConfigError(CertannError):
    """Parameters or flags are outside their admissible ranges."""

    exit_code: ClassVar[int] = 2


class DataError(CertannError):
    """Input data or files cannot be used as given."""

    exit_code: ClassVar[int] = 3


class InvariantViolationError(CertannError):
    """A structural guarantee of the index did not hold."""

    exit_code: ClassVar[int] = 4


class AdmissibilityError(ConfigError, ValueError):
    """A parameter is outside the range where the bounds apply."""


class KSelectionError(ConfigError):
    """Automatic selection of k produced a value below 1."""


class CellBudgetExceededError(ConfigError):
    """3^k cells exceed the configured cell budget."""

    def __init__(self, k: int, cell_budget: int) -> None:
        """Initialize with the offending k and the cap."""
        self.k = k
        self.cell_budget = cell_budget
        msg = (
            f"3^{k} = {3**k} cells exceed the cell budget of {cell_budget}; "
            "pass a smaller k or raise --cell-budget"
        )
        super().__init__(msg)


class DimensionMismatchError(DataError, ValueError):
    """Vectors of different dimension were combined."""

    def __init__(self, expected: int, actual: int, what: str = "vector") -> None:
        """Initialize with the expected and actual dimensions."""
        self.expected = expected
        self.actual = actual
        msg = (
            f"dimension mismatch: expected {what} of dimension {expected}, "
            f"got {actual}"
        )
        super().__init__(msg)


class HashOverflowError(DataError, OverflowError):
    """A hash component would not fit a 64-bit signed integer."""


class IngestError(DataError):
    """A dataset file could not be parsed."""

    def __init__(self, message: str, location: int | None = None) -> None:
        """Initialize with a message and an optional line or record number."""
        self.location = location
        super().__init__(message)


class IndexFormatError(DataError):
    """An index file is malformed."""


class NotAnIndexFileError(IndexFormatError):
    """The file does not start with the index magic bytes."""


class UnsupportedVersionError(IndexFormatError):
    """The index file was written with an unknown format version."""


class IndexChecksumError(IndexFormatError):
    """The stored checksum does not match the file contents."""


class IndexTruncatedError(IndexChecksumError):
    """The file is too short to hold its header and checksum."""
