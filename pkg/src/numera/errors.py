"""Exception hierarchy.

``FormatError`` and its subclasses signal malformed input files; everything
under ``DomainError`` is a mathematically meaningful refusal (the CLI maps
the two families to different exit codes).
"""


class NumeraError(Exception):
    pass


class FormatError(NumeraError):
    pass


class DeterminismError(FormatError):
    pass


class DomainError(NumeraError, ValueError):
    pass


class EmptyLanguageError(DomainError):
    pass


class NotInLanguageError(DomainError):
    pass


class NotALeftFactorError(DomainError):
    pass


class NotRepresentableError(DomainError):
    pass


class SubExponentialError(DomainError):
    pass


class AmbiguousGrowthError(DomainError):
    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class NotSquarefreeError(DomainError):
    pass


class IsolationError(DomainError):
    pass


class DivisionByZeroError(DomainError, ZeroDivisionError):
    pass


class NoUniqueFixedPointError(DomainError):
    pass


class NotEventuallyPeriodicWithinBudget(DomainError):
    pass


class ExplosionError(DomainError):
    pass


class InternalError(NumeraError, RuntimeError):
    pass
