"""Exception types shared across the package."""


class OAMetricsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OAMetricsError, ValueError):
    """Malformed input text.

    Attributes:
        line: 1-based line number of the offending input line, if known.
        column: 1-based token position within the line, if known.
    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            where = f"line {line}" + (f", token {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(OAMetricsError, ValueError):
    """Structurally valid input that violates an array requirement."""


class CodingError(OAMetricsError, ValueError):
    """Contrast coding unavailable or unsuitable for the requested operation."""


class StrengthZeroError(OAMetricsError, ValueError):
    """Resolution-based quantities need strength at least 1."""


class ResolutionUndefinedError(OAMetricsError, ValueError):
    """No projection of size strength+1 exists (full factorial degenerate case)."""


class OracleDeclinedError(OAMetricsError, RuntimeError):
    """A cross-check oracle cannot run on the given input (e.g. singular covariance)."""
