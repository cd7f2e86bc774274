"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter lies outside its valid domain."""


class EnumerationSizeError(ParameterError):
    """Exact enumeration was requested for a graph too large to enumerate."""


class DegenerateSampleError(ValueError):
    """A sample has zero variance, so standardized statistics are undefined."""
