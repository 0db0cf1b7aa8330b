"""Exception hierarchy shared by the library and the CLI."""


class ZigzagError(Exception):
    """Base class for every error raised by this package."""


class FieldError(ZigzagError, ValueError):
    """Invalid field parameters (bad width or reducible modulus)."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class ZeroInverseError(ZigzagError, ZeroDivisionError):
    """Raised when inverting the zero element."""


class SpecError(ZigzagError, ValueError):
    """A code specification violates its invariants."""


class DecodeError(ZigzagError):
    """The chosen node set does not determine the message."""

    def __init__(self, message, nodes=()):
        super().__init__(message)
        self.nodes = tuple(nodes)


class PlanError(ZigzagError, ValueError):
    """A repair plan cannot be built or does not match the code."""


class SearchError(ZigzagError, ValueError):
    """Invalid search request."""
