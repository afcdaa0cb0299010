"""Semantic exception hierarchy shared across the package."""


class QexpFitError(Exception):
    """Base class for all package errors."""


class ParameterError(QexpFitError, ValueError):
    """Parameter values outside the supported branch (theta > 0, sigma > 0, q > 1)."""


class DomainError(QexpFitError, ValueError):
    """Function argument outside its mathematical domain."""


class DataError(QexpFitError, ValueError):
    """Input data fail validation (negative values, censoring violations, parse errors)."""


class DegenerateSampleError(DataError):
    """The sample carries no information for the requested estimate (e.g. all values equal)."""


class InsufficientDataError(DataError):
    """Too few observations for the requested operation."""


class ConvergenceError(QexpFitError, RuntimeError):
    """A solver failed to locate a usable stationary point."""


class IllConditionedError(QexpFitError, RuntimeError):
    """A matrix required for inference is singular or not positive definite."""


class BootstrapUnstableError(ConvergenceError):
    """Too many bootstrap replicates failed to converge.

    Partial results, when available, are attached as the ``partial`` attribute.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InsufficientReplicatesError(QexpFitError, ValueError):
    """Not enough replicates for the requested summary."""


class MissingGroupError(QexpFitError, ValueError):
    """A summary group contains no usable replicates."""


class UndefinedStatisticError(QexpFitError, ArithmeticError):
    """A statistic is undefined for this sample (e.g. zero variance in log survival)."""
