"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class MultiLimitError(Exception):
    """Base class for all errors raised by :mod:`mlcf`."""


class InvalidInput(MultiLimitError, ValueError):
    """A precondition on the caller's data does not hold."""


class ZeroPartialNumerator(InvalidInput):
    """A partial numerator vanished, which would truncate the continued fraction."""


class ZeroScaleFactor(InvalidInput):
    pass


class EqualRoots(InvalidInput):
    """The two roots of unity coincide; the limit matrix is not diagonalizable."""


class ZeroInitialPair(InvalidInput):
    pass


class EqualConsecutiveTerms(InvalidInput):
    """Two consecutive target values agree, so no Bernoulli fraction exists."""


class DegenerateLimit(InvalidInput):
    pass


class GBoundViolated(InvalidInput):
    """The analytic function leaves the disc ``|G| < 1/2`` on the sample grid."""


class FunctionalEquationViolated(InvalidInput):
    pass


class DeviationBoundViolated(InvalidInput):
    """An observed deviation exceeds the caller's declared summable majorant."""


class IndexOutOfRange(MultiLimitError, IndexError):
    pass


class RecurrenceOverflow(MultiLimitError, OverflowError):
    """A recurrence left the range of finite doubles."""


class NoConvergence(MultiLimitError, ArithmeticError):
    """An iteration exhausted its budget without meeting the Cauchy criterion."""


class NoPeriodFound(NoConvergence):
    pass


class MismatchBeyondTolerance(MultiLimitError, ArithmeticError):
    """An iterated quantity disagrees with its closed form."""


class SingularVandermonde(MultiLimitError, ArithmeticError):
    pass


class PoleInFormula(MultiLimitError, ZeroDivisionError):
    pass
