"""Truncated power series of rational functions with integer coefficients.

Polynomials in t are lists of ints, index = power.  Expansion uses the
linear recurrence imposed by the denominator and insists on exact integer
coefficients: Hilbert series of graded modules are integral, so a
non-integral coefficient means the input was wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DataError, DomainError, NonIntegralCoefficientError, PoleAtOriginError

IntPoly = list[int]

# t^3 (6t^2 - 15t + 10) / (t - 1)^4, the Hilbert series of the coordinates
# of ten symmetroid nodes cut from the rank<=2 locus of symmetric 4x4
# matrices; its first nonzero coefficients are 10, 25, 46 at t^3..t^5.
SYMMETROID_NUMERATOR: IntPoly = [0, 0, 0, 10, -15, 6]
SYMMETROID_DENOMINATOR: IntPoly = [1, -4, 6, -4, 1]
SYMMETROID_LEADING_COEFFICIENTS = [0, 0, 0, 10, 25, 46]


def _trimmed(p: IntPoly) -> IntPoly:
    out = list(p)
    while out and out[-1] == 0:
        out.pop()
    return out


def _normalized(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    num, den = _trimmed(num), _trimmed(den)
    if not den:
        raise DomainError("zero denominator")
    if den[0] == 0:
        raise PoleAtOriginError("denominator vanishes at t = 0; no power series expansion")
    if den[0] < 0:
        num = [-c for c in num]
        den = [-c for c in den]
    return num, den


def expand_rational_series(num: IntPoly, den: IntPoly, order: int) -> list[int]:
    """First ``order + 1`` Maclaurin coefficients of num/den, exact integers."""
    if order < 0:
        raise DomainError(f"order must be non-negative, got {order}")
    num, den = _normalized(num, den)
    coeffs: list[int] = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else 0
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * coeffs[k - i]
        q, r = divmod(acc, den[0])
        if r != 0:
            raise NonIntegralCoefficientError(
                f"coefficient of t^{k} is {acc}/{den[0]}, not an integer"
            )
        coeffs.append(q)
    return coeffs


def long_division_series(num: IntPoly, den: IntPoly, order: int) -> list[int]:
    """Same series by naive long division; independent cross-check of
    :func:`expand_rational_series`."""
    if order < 0:
        raise DomainError(f"order must be non-negative, got {order}")
    num, den = _normalized(num, den)
    remainder = list(num) + [0] * (order + len(den) + 1 - len(num))
    coeffs = []
    for k in range(order + 1):
        q, r = divmod(remainder[k], den[0])
        if r != 0:
            raise NonIntegralCoefficientError(
                f"coefficient of t^{k} is {remainder[k]}/{den[0]}, not an integer"
            )
        coeffs.append(q)
        for i, d in enumerate(den):
            remainder[k + i] -= q * d
    return coeffs


@dataclass(frozen=True)
class RationalSeries:
    """A rational function together with its expansion up to some order."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    coefficients: tuple[int, ...]

    def __post_init__(self):
        num, den = _normalized(list(self.numerator), list(self.denominator))
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "denominator", tuple(den))
        # the stored coefficients must satisfy the denominator's recurrence
        expected = expand_rational_series(num, den, len(self.coefficients) - 1)
        if list(self.coefficients) != expected:
            raise DataError("coefficients do not satisfy the denominator recurrence")

    @classmethod
    def expand(cls, num: IntPoly, den: IntPoly, order: int) -> "RationalSeries":
        return cls(tuple(num), tuple(den),
                   tuple(expand_rational_series(num, den, order)))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def symmetroid_hilbert_series(order: int = 5) -> list[int]:
    """Coefficients of the ten-node symmetroid Hilbert series up to ``order``."""
    return expand_rational_series(
        SYMMETROID_NUMERATOR, SYMMETROID_DENOMINATOR, order
    )


def symmetroid_hilbert_check() -> bool:
    """True iff the fixed series opens with 0, 0, 0, 10, 25, 46.

    The zero at t^2 is the point: no quadric vanishes on the ten nodes,
    which is the series-expansion half of the no-quadric verification (the
    finite-field half lives in the symmetroid scanner).
    """
    return symmetroid_hilbert_series(5) == SYMMETROID_LEADING_COEFFICIENTS
