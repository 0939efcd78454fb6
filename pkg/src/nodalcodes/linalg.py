"""Exact matrix rank, reduced row echelon form, and kernels.

Dense Gaussian elimination over Q or F_p, plus a packed-bit F2 path for
generator matrices of binary codes.  Everything is pure: operations never
mutate their inputs and return fresh matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DataError, DomainError, ResourceError, RetryWithNewPrime
from .fields import Field, PrimeField, RationalField, Scalar, is_prime

_BIT_COLS_CAP = 4096


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix with entries in a single exact field."""

    field: Field
    entries: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence]) -> "ExactMatrix":
        validated = []
        width = None
        for row in rows:
            vr = tuple(field.validate(a) for a in row)
            if width is None:
                width = len(vr)
            elif len(vr) != width:
                raise DataError("ragged matrix: rows have different lengths")
            validated.append(vr)
        return cls(field, tuple(validated))

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        return cls(
            field,
            tuple(
                tuple(field.one if i == j else field.zero for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, tuple(tuple(field.zero for _ in range(cols)) for _ in range(rows)))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.field!r}, {self.nrows}x{self.ncols})"


def _eliminate(m: ExactMatrix) -> tuple[list[list], list[int]]:
    """Full Gauss-Jordan reduction; returns (reduced rows, pivot columns)."""
    f = m.field
    rows = [list(r) for r in m.entries]
    nrows, ncols = len(rows), m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # pick the candidate with the smallest pivot to limit coefficient growth
        best = None
        for i in range(r, nrows):
            if not f.is_zero(rows[i][c]):
                size = f.pivot_size(rows[i][c])
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        i = best[1]
        rows[r], rows[i] = rows[i], rows[r]
        inv = f.inverse(rows[r][c])
        rows[r] = [f.mul(inv, v) for v in rows[r]]
        for j in range(nrows):
            if j != r and not f.is_zero(rows[j][c]):
                factor = rows[j][c]
                rows[j] = [f.sub(a, f.mul(factor, b)) for a, b in zip(rows[j], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank_and_rref(m: ExactMatrix) -> tuple[int, ExactMatrix]:
    """Rank and the unique reduced row echelon form of ``m``."""
    rows, pivots = _eliminate(m)
    return len(pivots), ExactMatrix(m.field, tuple(tuple(r) for r in rows))


def nullspace_basis(m: ExactMatrix) -> list[tuple[Scalar, ...]]:
    """Basis of the right kernel; returns ``ncols - rank`` vectors."""
    f = m.field
    rows, pivots = _eliminate(m)
    pivot_of_col = {c: i for i, c in enumerate(pivots)}
    free_cols = [c for c in range(m.ncols) if c not in pivot_of_col]
    basis = []
    for fc in free_cols:
        vec = [f.zero] * m.ncols
        vec[fc] = f.one
        for c, i in pivot_of_col.items():
            vec[c] = f.neg(rows[i][fc])
        basis.append(tuple(vec))
    return basis


def modular_rank(m: ExactMatrix, p: int) -> int:
    """Rank of a rational matrix reduced mod p.

    Always a lower bound for the rational rank.  Raises
    :class:`RetryWithNewPrime` when an entry denominator is divisible by p.
    """
    if not isinstance(m.field, RationalField):
        raise DomainError("modular_rank expects a matrix over the rationals")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    fp = PrimeField(p) if p != 2 else None
    reduced_rows = []
    for row in m.entries:
        rr = []
        for a in row:
            a = Fraction(a)
            if a.denominator % p == 0:
                raise RetryWithNewPrime(p)
            rr.append(a.numerator * pow(a.denominator, -1, p) % p)
        reduced_rows.append(rr)
    if fp is None:
        return bit_rank(BitMatrix.from_dense(m.ncols, reduced_rows))
    return rank_and_rref(ExactMatrix.from_rows(fp, reduced_rows))[0]


_ADVISORY_RNG = random.Random("modular-rank-advisory")


def random_30bit_prime(rng: random.Random | None = None) -> int:
    rng = rng or _ADVISORY_RNG
    while True:
        candidate = rng.getrandbits(30) | (1 << 29) | 1
        if is_prime(candidate):
            return candidate


def exact_rank(m: ExactMatrix) -> int:
    """Rank with a modular advisory pre-check for rational matrices.

    The rank is decided by exact elimination; the single-prime modular
    pass only serves as a cheap cross-check and is retried or dropped if
    the prime divides a denominator.
    """
    rank = rank_and_rref(m)[0]
    if isinstance(m.field, RationalField) and m.entries:
        try:
            advisory = modular_rank(m, random_30bit_prime())
        except RetryWithNewPrime:
            advisory = None
        if advisory is not None and advisory > rank:
            raise AssertionError(
                f"modular rank {advisory} exceeds exact rank {rank}; elimination is broken"
            )
    return rank


@dataclass(frozen=True)
class BitMatrix:
    """Matrix over F2 with rows packed into Python ints (bit i = column i)."""

    cols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.cols > _BIT_COLS_CAP:
            raise ResourceError(f"BitMatrix is capped at {_BIT_COLS_CAP} columns")
        if self.cols < 0:
            raise DataError("negative column count")
        mask = (1 << self.cols) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise DataError("row has bits outside the declared column range")

    @classmethod
    def from_dense(cls, cols: int, rows: Iterable[Sequence[int]]) -> "BitMatrix":
        packed = []
        for row in rows:
            if len(row) != cols:
                raise DataError("row length must equal the column count exactly")
            word = 0
            for i, b in enumerate(row):
                if b % 2:
                    word |= 1 << i
            packed.append(word)
        return cls(cols, tuple(packed))

    @property
    def nrows(self) -> int:
        return len(self.rows)


def bit_rref(rows: Iterable[int]) -> list[int]:
    """Fully reduced F2 basis of the span, sorted by leading bit descending."""
    basis: dict[int, int] = {}
    for v in rows:
        cur = v
        while cur:
            lead = cur.bit_length() - 1
            if lead in basis:
                cur ^= basis[lead]
            else:
                for lb, row in basis.items():
                    if (row >> lead) & 1:
                        basis[lb] = row ^ cur
                basis[lead] = cur
                break
    return sorted(basis.values(), reverse=True)


def bit_rank(m: BitMatrix) -> int:
    return len(bit_rref(m.rows))
