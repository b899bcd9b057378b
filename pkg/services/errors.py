"""Exception hierarchy for binomial-series."""


class BinomialSeriesError(Exception):
    """Base exception for all library errors."""

    pass


class ParameterDomainError(BinomialSeriesError, ValueError):
    """Raised when a parameter is outside the documented domain."""

    pass


class MissingEvaluatorError(BinomialSeriesError):
    """Raised when grid values are needed from a coefficient-only provider."""

    pass


class UsageError(BinomialSeriesError):
    """Raised for unknown commands, names or unparsable CLI arguments."""

    pass
