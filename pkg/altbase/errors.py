"""
Exceptions raised by altbase. Every class subclasses the closest builtin
exception so that callers can catch either.
"""


class AltBaseError(Exception):
    """Base class of all altbase domain errors."""


# Exact arithmetic
class ZeroPolynomial(AltBaseError, ValueError):
    pass


class NotSquarefree(AltBaseError, ValueError):
    pass


class InvalidIsolator(AltBaseError, ValueError):
    pass


# Number field
class FieldMismatch(AltBaseError, ValueError):
    pass


class DivisionByZero(AltBaseError, ZeroDivisionError):
    pass


class NotInvertible(AltBaseError, ArithmeticError):
    """Raised when gcd(b, minpoly) is nonconstant, i.e. the minpoly is reducible."""


class RootFindingFailed(AltBaseError, RuntimeError):
    pass


# Base construction
class BetaNotGreaterThanOne(AltBaseError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f'beta_{index} is not greater than 1.')


class RootNotGreaterThanOne(AltBaseError, ValueError):
    pass


class MalformedConfig(AltBaseError, ValueError):
    pass


# Expansions
class OutOfRange(AltBaseError, ValueError):
    pass


class NonPeriodicWord(AltBaseError, ValueError):
    pass


class DigitOutOfRange(AltBaseError, ValueError):
    pass


class DigitNotInAlphabet(AltBaseError, ValueError):
    pass


class Undecided(AltBaseError, RuntimeError):
    pass


# Certificates
class ExpansionDidNotClose(AltBaseError, RuntimeError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(
            message or f'The expansion of rational number {index} did not close within the cap.'
        )


class DegenerateChoice(AltBaseError, ValueError):
    def __init__(self, certificate, message=None):
        self.certificate = certificate
        super().__init__(
            message
            or 'det M(X) is the zero polynomial, the certificate is inconclusive. '
            'Try different rational numbers.'
        )


class NotPurelyPeriodic(AltBaseError, ValueError):
    pass


class NoRootAboveOne(AltBaseError, ValueError):
    pass


# Pure periodicity family
class PeriodDidNotClose(AltBaseError, RuntimeError):
    pass


class RewriteFailed(AltBaseError, RuntimeError):
    pass
