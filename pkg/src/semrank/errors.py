"""Exception types shared across the package."""


class SemrankError(Exception):
    """Base class for all semrank errors."""


class EmptyDocumentError(SemrankError):
    """Input text is empty or whitespace-only."""


class FormatError(SemrankError):
    """A data file violates its documented format.

    Carries the offending line number (1-based) when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ZeroVectorError(SemrankError):
    """A zero-norm vector where a direction is required."""


class DimensionError(SemrankError):
    """Vector length mismatch."""


class OutOfVocabularyError(SemrankError):
    """A required token has no vector."""

    def __init__(self, token: str | None = None, message: str | None = None):
        self.token = token
        super().__init__(message or f"token not in vocabulary: {token!r}")


class EmptyCorpusError(SemrankError):
    """No vocabulary survives min-count filtering."""


class EmptyGraphError(SemrankError):
    """Ranking requires at least one node."""


class NonFiniteWeightError(SemrankError):
    """Graph edge weight is NaN or infinite."""


class InsufficientCalibrationError(SemrankError):
    """Fewer than two usable paragraph pairs for threshold calibration."""


class DegenerateReferenceError(SemrankError):
    """A reference summary too short to contain a bigram."""
