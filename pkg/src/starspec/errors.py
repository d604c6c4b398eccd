"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates a documented precondition."""


class UnsupportedOrder(ValueError):
    """The requested graph order is outside what an exact routine handles."""


class Graph6Error(ValueError):
    """Malformed graph6 input.  ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class NumericalFailure(ArithmeticError):
    """An iterative numerical routine missed its tolerance."""

    def __init__(self, message, achieved):
        super().__init__(f"{message} (achieved residual {achieved:.3e})")
        self.achieved = achieved


class PreconditionFailure(ValueError):
    """Input does not have the structure an operation requires.

    ``deviation`` carries the measured violation when one is available.
    """

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation
