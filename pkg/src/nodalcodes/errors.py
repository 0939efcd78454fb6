"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: usage problems exit 1, anything
derived from :class:`InputError` exits 2, and failed certifications
exit 3 (the latter are reported values, not exceptions).
"""


class NodalcodesError(Exception):
    """Base class for all errors raised by this package."""


class InputError(NodalcodesError):
    """Invalid data or parameters supplied by the caller."""


class DataError(InputError):
    """Malformed or inconsistent input data (bad matrix, duplicate points, ...)."""


class DomainError(InputError):
    """Parameter outside the mathematical domain of an operation."""


class ResourceError(InputError):
    """Request exceeds a documented size cap (enumeration or bit-width limits)."""


class InconsistencyError(InputError):
    """Inputs violate a relation that holds for all genuine configurations."""


class RetryWithNewPrime(NodalcodesError):
    """A modular computation hit a denominator divisible by the chosen prime.

    Callers should retry with a different prime; the rational-arithmetic
    path is unaffected.
    """

    def __init__(self, prime: int):
        super().__init__(f"denominator divisible by prime {prime}; retry with a new prime")
        self.prime = prime


class ParseError(DataError):
    """Syntax error in a polynomial string; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class HomogeneityError(DataError):
    """Polynomial input mixes two distinct term degrees."""

    def __init__(self, degree_a: int, degree_b: int):
        super().__init__(
            f"polynomial is not homogeneous: found terms of degree {degree_a} and {degree_b}"
        )
        self.degrees = (degree_a, degree_b)


class PoleAtOriginError(DomainError):
    """Rational series denominator vanishes at t = 0; no power series exists."""


class NonIntegralCoefficientError(DomainError):
    """Series expansion produced a non-integer coefficient."""
