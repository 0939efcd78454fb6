"""Exact coefficient fields: the rationals and odd prime fields.

Scalars are plain Python values (``Fraction`` for Q, ``int`` in ``[0, p)``
for F_p); a field object bundles the arithmetic so matrices and forms can
work over either field through one interface.  Rationals are always in
lowest terms with positive denominator (``Fraction`` guarantees this),
prime-field values are always reduced mod p.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DataError, DomainError

Scalar = Union[Fraction, int]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """Arbitrary-precision rational arithmetic on ``Fraction`` values."""

    name = "rational"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def parse(self, text: str) -> Fraction:
        text = text.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DataError(f"not a rational number: {text!r}") from exc

    def validate(self, a: Scalar) -> Fraction:
        if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
            raise DataError(f"not a rational scalar: {a!r}")
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inverse(self, a):
        if a == 0:
            raise DomainError("division by zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def to_str(self, a) -> str:
        return str(a)

    def pivot_size(self, a: Fraction) -> int:
        """Bit size of numerator x denominator; small pivots limit blowup."""
        return abs(a.numerator).bit_length() + a.denominator.bit_length()

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rational-field")

    def __repr__(self) -> str:
        return "RationalField()"


class PrimeField:
    """Arithmetic modulo an odd prime, on ints reduced to ``[0, p)``."""

    characteristic: int

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if p == 2:
            raise DomainError("prime field must be odd (packed-bit F2 has its own path)")
        self.p = p
        self.characteristic = p
        self.name = f"F_{p}"
        self.zero = 0
        self.one = 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def parse(self, text: str) -> int:
        text = text.strip()
        if "/" in text:
            num_s, den_s = text.split("/", 1)
            try:
                num, den = int(num_s), int(den_s)
            except ValueError as exc:
                raise DataError(f"not a scalar: {text!r}") from exc
            if den % self.p == 0:
                raise DataError(f"denominator {den} is divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        try:
            return int(text) % self.p
        except ValueError as exc:
            raise DataError(f"not a scalar: {text!r}") from exc

    def validate(self, a: Scalar) -> int:
        if isinstance(a, bool) or not isinstance(a, int):
            if isinstance(a, Fraction):
                raise DataError("rational scalar supplied to a prime-field matrix")
            raise DataError(f"not a prime-field scalar: {a!r}")
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inverse(self, a):
        if a % self.p == 0:
            raise DomainError("division by zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def to_str(self, a) -> str:
        return str(a % self.p)

    def pivot_size(self, a: int) -> int:
        return 1  # all nonzero residues are equally good pivots

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("prime-field", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


Field = Union[RationalField, PrimeField]

QQ = RationalField()
