"""Exception types raised by newtonfunm."""


class NewtonFunmError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(NewtonFunmError, ValueError):
    pass


class SingularMatrix(NewtonFunmError, ArithmeticError):
    pass


class NonFiniteResult(NewtonFunmError, ArithmeticError):
    pass


class ZeroDenominator(NewtonFunmError, ZeroDivisionError):
    """Two interpolation points coincide exactly in the direct recurrence.

    Coincident points must go through the Taylor path instead.
    """


class PartitionMismatch(NewtonFunmError, ValueError):
    pass


class CoefficientUnavailable(NewtonFunmError, ValueError):
    pass


class GenerationExhausted(NewtonFunmError, RuntimeError):
    def __init__(self, message, trial=None):
        super().__init__(message)
        self.trial = trial
