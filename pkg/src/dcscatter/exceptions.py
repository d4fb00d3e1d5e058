"""Warnings and errors shared by the engines and the CLI."""


class RegimeWarning(UserWarning):
    """An input lies outside the regime where an asymptotic formula is trusted."""


class TruncationWarning(UserWarning):
    """A partial-wave or channel sum was truncated with a tail above tolerance."""


class RegimeError(ValueError):
    """A hard physical precondition is violated."""


class ModelConsistencyError(ValueError):
    """A loss weight came out negative: the material model violates passivity."""
