"""Exact linear algebra: rank, rref, kernels, modular reduction, F2 path."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodalcodes.errors import DataError, ResourceError, RetryWithNewPrime
from nodalcodes.fields import PrimeField, QQ
from nodalcodes.linalg import (
    BitMatrix,
    ExactMatrix,
    bit_rank,
    modular_rank,
    nullspace_basis,
    random_30bit_prime,
    rank_and_rref,
)


def _minor_rank_oracle(rows, size):
    """Largest k with a nonzero k x k minor, determinants by cofactor expansion."""

    def det(sub):
        n = len(sub)
        if n == 1:
            return sub[0][0]
        total = Fraction(0)
        for j in range(n):
            if sub[0][j] == 0:
                continue
            minor = [row[:j] + row[j + 1 :] for row in sub[1:]]
            total += (-1) ** j * sub[0][j] * det(minor)
        return total

    nrows, ncols = len(rows), len(rows[0])
    for k in range(min(nrows, ncols, size), 0, -1):
        for ris in itertools.combinations(range(nrows), k):
            for cis in itertools.combinations(range(ncols), k):
                sub = [[rows[r][c] for c in cis] for r in ris]
                if det(sub) != 0:
                    return k
    return 0


def test_identity_rank_and_rref():
    m = ExactMatrix.identity(QQ, 3)
    rank, rref = rank_and_rref(m)
    assert rank == 3
    assert rref == m


def test_zero_matrix_rank():
    m = ExactMatrix.zero(QQ, 4, 7)
    assert rank_and_rref(m)[0] == 0


def test_duplicated_rows_rank_with_minor_oracle():
    rng = random.Random(20240811)
    m_rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)]
              for _ in range(6)]
    m_rows.append(list(m_rows[0]))
    m_rows.append(list(m_rows[3]))
    rank = rank_and_rref(ExactMatrix.from_rows(QQ, m_rows))[0]
    assert rank <= 7
    # independent cofactor-expansion oracle, checked at the 4x4 level
    has_4x4 = _minor_rank_oracle(m_rows, 4) >= 4
    assert (rank >= 4) == has_4x4


def test_rank_matches_minor_oracle_small():
    rng = random.Random(7)
    for _ in range(10):
        rows = [[Fraction(rng.randint(-4, 4)) for _ in range(6)] for _ in range(5)]
        rank = rank_and_rref(ExactMatrix.from_rows(QQ, rows))[0]
        assert rank == _minor_rank_oracle(rows, 5)


def test_nullspace_identity_empty():
    assert nullspace_basis(ExactMatrix.identity(QQ, 4)) == []


def test_nullspace_zero_matrix():
    basis = nullspace_basis(ExactMatrix.zero(QQ, 2, 5))
    assert len(basis) == 5


def test_nullspace_ones_row_over_f7():
    f7 = PrimeField(7)
    m = ExactMatrix.from_rows(f7, [[1, 1, 1]])
    basis = nullspace_basis(m)
    assert len(basis) == 2
    for vec in basis:
        assert sum(vec) % 7 == 0
    # enumeration oracle: the kernel of (1,1,1) over F_7 has exactly 49 vectors
    kernel = {v for v in itertools.product(range(7), repeat=3) if sum(v) % 7 == 0}
    assert len(kernel) == 49
    spanned = set()
    for a in range(7):
        for b in range(7):
            vec = tuple(
                (a * basis[0][i] + b * basis[1][i]) % 7 for i in range(3)
            )
            spanned.add(vec)
    assert spanned == kernel


def test_modular_rank_identity():
    m = ExactMatrix.identity(QQ, 5)
    for p in (3, 101, 1000003):
        assert modular_rank(m, p) == 5


def test_modular_rank_column_with_prime_entry():
    p = 13
    m = ExactMatrix.from_rows(QQ, [[1], [p]])
    assert modular_rank(m, p) == 1
    assert rank_and_rref(m)[0] == 1


def test_modular_rank_matches_rational_rank_random():
    rng = random.Random(99)
    for _ in range(20):
        rows = [[Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(10)]
                for _ in range(10)]
        m = ExactMatrix.from_rows(QQ, rows)
        exact = rank_and_rref(m)[0]
        for _ in range(3):
            p = random_30bit_prime(rng)
            assert modular_rank(m, p) == exact


def test_modular_rank_denominator_hit():
    m = ExactMatrix.from_rows(QQ, [[Fraction(1, 5)]])
    with pytest.raises(RetryWithNewPrime):
        modular_rank(m, 5)


def test_mixed_field_entries_rejected():
    with pytest.raises(DataError):
        ExactMatrix.from_rows(PrimeField(7), [[Fraction(1, 2)]])
    with pytest.raises(DataError):
        ExactMatrix.from_rows(QQ, [["x"]])


@st.composite
def _rational_matrices(draw):
    nrows = draw(st.integers(1, 5))
    ncols = draw(st.integers(1, 6))
    rows = [
        [
            Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
            for _ in range(ncols)
        ]
        for _ in range(nrows)
    ]
    return ExactMatrix.from_rows(QQ, rows)


@settings(deadline=None, max_examples=60)
@given(_rational_matrices())
def test_rref_idempotent(m):
    rank, rref = rank_and_rref(m)
    rank2, rref2 = rank_and_rref(rref)
    assert rank2 == rank
    assert rref2 == rref


@settings(deadline=None, max_examples=40)
@given(_rational_matrices(), st.integers(0, 10))
def test_modular_rank_never_exceeds_rational(m, prime_index):
    primes = [3, 5, 7, 11, 13, 101, 257, 1009, 65537, 999983, 1073741827]
    p = primes[prime_index]
    exact = rank_and_rref(m)[0]
    try:
        assert modular_rank(m, p) <= exact
    except RetryWithNewPrime:
        pass


def _naive_mod2_rank(rows, cols):
    """Dense integer elimination mod 2, independent of the packed path."""
    mat = [list(r) for r in rows]
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c] % 2), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c] % 2:
                mat[i] = [(a + b) % 2 for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def test_bit_rank_against_naive_oracle():
    rng = random.Random(5)
    for _ in range(200):
        nrows = rng.randint(1, 16)
        ncols = rng.randint(1, 17)
        dense = [[rng.randint(0, 1) for _ in range(ncols)] for _ in range(nrows)]
        bm = BitMatrix.from_dense(ncols, dense)
        assert bit_rank(bm) == _naive_mod2_rank(dense, ncols)


def test_bitmatrix_caps_and_validation():
    with pytest.raises(ResourceError):
        BitMatrix(5000, ())
    with pytest.raises(DataError):
        BitMatrix(3, (0b1000,))
    with pytest.raises(DataError):
        BitMatrix.from_dense(3, [[1, 0]])
