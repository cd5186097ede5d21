"""Exception hierarchy shared by every layer of the package."""


class FiberConeError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(FiberConeError, ValueError):
    pass


class NotFiniteLengthError(FiberConeError, ValueError):
    pass


class FiltrationError(FiberConeError, ValueError):
    """Raised when seeds fail the good-filtration axioms.

    ``witness`` holds the offending index pair ``(m, n)`` when one exists.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(FiberConeError, ValueError):
    pass


class WindowExhaustedError(FiberConeError, RuntimeError):
    pass


class AttemptsExhaustedError(FiberConeError, RuntimeError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class ConsistencyViolation(FiberConeError, AssertionError):
    """Two routes that must agree by theorem produced different answers."""


class IterationCapError(FiberConeError, RuntimeError):
    pass
