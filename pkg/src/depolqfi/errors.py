"""Exception hierarchy shared by all modules."""


class DepolQfiError(Exception):
    """Base class for all package errors."""


class DomainError(DepolQfiError, ValueError):
    """An argument is outside its allowed range."""


class CapacityError(DepolQfiError):
    """A requested dense matrix would exceed the configured dimension cap."""


class NumericError(DepolQfiError):
    """A numerical routine failed to converge or produced an unusable result."""


class PositivityError(DepolQfiError):
    """A 2x2 block violates positivity (d < |lambda^m c|) beyond tolerance."""


class UndefinedGainError(DepolQfiError):
    """A gain ratio is 0/0 and has no defined value (e.g. r = 0)."""
