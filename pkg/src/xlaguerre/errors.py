"""Exception hierarchy shared by the construction and verification modules."""


class XLaguerreError(Exception):
    """Base class for all package errors."""


class ZeroPolynomial(XLaguerreError, ValueError):
    pass


class StructuralError(XLaguerreError, ValueError):
    """An operation would leave the quasi-rational function class."""


class DegenerateSeed(XLaguerreError, ValueError):
    pass


class DegenerateWronskian(XLaguerreError, ValueError):
    pass


class ConstraintViolation(XLaguerreError, ValueError):
    pass


class InadmissibleDenominator(XLaguerreError, ValueError):
    pass


class IdentityViolation(XLaguerreError, AssertionError):
    """An exact identity failed; ``residual`` carries the offending object."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NoPolynomialSolution(XLaguerreError, ArithmeticError):
    pass


class AmbiguousSolution(XLaguerreError, ArithmeticError):
    pass


class PoleEncountered(XLaguerreError, FloatingPointError):
    pass


class ConvergenceFailure(XLaguerreError, RuntimeError):
    pass


class QuadratureNonConvergence(XLaguerreError, RuntimeError):
    pass
