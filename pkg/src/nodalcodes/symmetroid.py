"""Finite-field search for the rank-2 locus of symmetric matrices of linear forms.

A symmetric 4x4 matrix of linear forms in x, y, z, w cuts out a quartic
symmetroid (its determinant); the locus in P^3 where the matrix drops to
rank <= 2 is the symmetroid's distinguished even set of ten nodes.  Over
F_p the whole of P^3 can be enumerated, the rank condition checked via
the sixteen 3x3 minors, and quadric interpolation through the resulting
points tested exactly.  The outcome is finite-field evidence, labeled as
such: nothing here claims a characteristic-0 proof.

Uniformly random coefficient matrices are the wrong distribution for this
experiment: Frobenius permutes the ten geometric rank-2 points, so almost
none of them are F_p-rational for a random matrix.  The seeded generator
therefore builds the matrix from the web of quadrics through six random
rational points; its ten rank-2 members are the C(6,3)/2 = 10 splittings
of the six points into two plane-spanning triples, all rational by
construction.  A uniform generator is kept for comparison experiments.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DataError, DomainError, ResourceError
from .fields import PrimeField, is_prime
from .forms import HomogeneousForm, parse_form
from .linalg import ExactMatrix, nullspace_basis, rank_and_rref

_PRIME_CAP = 1024
DEFAULT_DEGENERATE_THRESHOLD = 50

# upper-triangle positions of a symmetric 4x4 matrix, row-major
UPPER_TRIANGLE = tuple((i, j) for i in range(4) for j in range(i, 4))

# degree-2 monomial exponent pairs, matching the quadric coefficient order
QUADRIC_MONOMIALS = UPPER_TRIANGLE


@dataclass(frozen=True)
class SymmetricLinearMatrix:
    """Ten linear forms over F_p filling the upper triangle symmetrically."""

    prime: int
    coefficients: tuple[tuple[int, int, int, int], ...]  # one (x,y,z,w) row per entry

    def __post_init__(self):
        p = self.prime
        if not is_prime(p) or p == 2:
            raise DomainError(f"{p} is not an odd prime")
        if len(self.coefficients) != 10:
            raise DataError("expected 10 upper-triangle linear forms")
        object.__setattr__(
            self,
            "coefficients",
            tuple(tuple(c % p for c in row) for row in self.coefficients),
        )
        for row in self.coefficients:
            if len(row) != 4:
                raise DataError("each linear form needs 4 coefficients")

    @classmethod
    def from_forms(cls, prime: int, forms) -> "SymmetricLinearMatrix":
        field = PrimeField(prime)
        rows = []
        for f in forms:
            if f.field != field:
                raise DataError("matrix entries must live over F_p for the scan prime")
            if not f.is_zero() and f.degree != 1:
                raise DataError(f"matrix entries must be linear, got degree {f.degree}")
            coeffs = [0, 0, 0, 0]
            for mono, c in f.terms.items():
                coeffs[mono.index(1)] = c
            rows.append(tuple(coeffs))
        return cls(prime, tuple(rows))

    @classmethod
    def from_strings(cls, prime: int, texts) -> "SymmetricLinearMatrix":
        field = PrimeField(prime)
        return cls.from_forms(prime, [parse_form(t, field) for t in texts])

    def forms(self) -> list[HomogeneousForm]:
        field = PrimeField(self.prime)
        out = []
        for row in self.coefficients:
            terms = {}
            for i, c in enumerate(row):
                if c % self.prime:
                    mono = tuple(1 if k == i else 0 for k in range(4))
                    terms[mono] = c % self.prime
            out.append(HomogeneousForm(1, field, terms) if terms
                       else HomogeneousForm.zero_form(1, field))
        return out

    def evaluate(self, point) -> list[list[int]]:
        """The symmetric 4x4 integer matrix at a point, entries mod p."""
        p = self.prime
        values = [
            sum(c * x for c, x in zip(row, point)) % p for row in self.coefficients
        ]
        m = [[0] * 4 for _ in range(4)]
        for (i, j), v in zip(UPPER_TRIANGLE, values):
            m[i][j] = m[j][i] = v
        return m

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "upper_triangle": [str(f) for f in self.forms()],
        }


def matrix_from_dict(data: dict) -> SymmetricLinearMatrix:
    try:
        prime = data["prime"]
        entries = data["upper_triangle"]
    except (KeyError, TypeError) as exc:
        raise DataError(f"matrix file is missing {exc}") from exc
    if len(entries) != 10:
        raise DataError(f"expected 10 upper-triangle entries, got {len(entries)}")
    return SymmetricLinearMatrix.from_strings(prime, entries)


def load_matrix_file(path: str) -> SymmetricLinearMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read matrix file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"matrix file is not valid JSON: {exc}") from exc
    return matrix_from_dict(data)


@dataclass(frozen=True)
class ScanResult:
    prime: int
    points: tuple[tuple[int, int, int, int], ...]
    degenerate: bool
    threshold: int

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "count": len(self.points),
            "points": [list(pt) for pt in self.points],
            "degenerate": self.degenerate,
            "degenerate_threshold": self.threshold,
            "evidence": "finite-field scan; probabilistic evidence only",
        }


def minors_vanish_at(matrix: SymmetricLinearMatrix, point) -> bool:
    """Pure-integer check that all sixteen 3x3 minors vanish at a point."""
    p = matrix.prime
    m = matrix.evaluate(point)
    for rows in combinations(range(4), 3):
        for cols in combinations(range(4), 3):
            r1, r2, r3 = rows
            c1, c2, c3 = cols
            det = (
                m[r1][c1] * (m[r2][c2] * m[r3][c3] - m[r2][c3] * m[r3][c2])
                - m[r1][c2] * (m[r2][c1] * m[r3][c3] - m[r2][c3] * m[r3][c1])
                + m[r1][c3] * (m[r2][c1] * m[r3][c2] - m[r2][c2] * m[r3][c1])
            ) % p
            if det:
                return False
    return True


def _minor_masks(entry, p, mask):
    """Refine a boolean mask to points where every 3x3 minor vanishes."""
    alive = np.nonzero(mask)[0]
    local = {k: v[alive] for k, v in entry.items()}
    ok = np.ones(alive.shape[0], dtype=bool)
    for rows in combinations(range(4), 3):
        for cols in combinations(range(4), 3):
            if not ok.any():
                return np.zeros_like(mask)
            r1, r2, r3 = rows
            c1, c2, c3 = cols
            a, b, c = local[(r1, c1)], local[(r1, c2)], local[(r1, c3)]
            d, e, f = local[(r2, c1)], local[(r2, c2)], local[(r2, c3)]
            g, h, i = local[(r3, c1)], local[(r3, c2)], local[(r3, c3)]
            det = (
                a * ((e * i - f * h) % p)
                - b * ((d * i - f * g) % p)
                + c * ((d * h - e * g) % p)
            ) % p
            ok &= det == 0
            if ok.sum() * 20 < ok.shape[0]:
                # few survivors: compress before the remaining minors
                keep = np.nonzero(ok)[0]
                alive = alive[keep]
                local = {k: v[keep] for k, v in local.items()}
                ok = np.ones(alive.shape[0], dtype=bool)
    out = np.zeros_like(mask)
    out[alive[ok]] = True
    return out


def _block_coords(p: int, block):
    """Materialize one descriptor from :func:`_point_blocks` as coordinate arrays."""
    r = np.arange(p, dtype=np.int64)
    kind = block[0]
    if kind == "tail":
        # representatives with leading zeros: (0:0:0:1), (0:0:1:c), (0:1:b:c)
        b, c = np.meshgrid(r, r, indexing="ij")
        x = np.concatenate([np.zeros(1 + p + p * p, dtype=np.int64)])
        y = np.concatenate([np.zeros(1 + p, dtype=np.int64), np.ones(p * p, dtype=np.int64)])
        z = np.concatenate([np.zeros(1, dtype=np.int64), np.ones(p, dtype=np.int64), b.ravel()])
        w = np.concatenate([np.ones(1, dtype=np.int64), r.copy(), c.ravel()])
        return x, y, z, w
    start, stop = block[1], block[2]
    a, b, c = np.meshgrid(np.arange(start, stop, dtype=np.int64), r, r, indexing="ij")
    return np.ones(a.size, dtype=np.int64), a.ravel(), b.ravel(), c.ravel()


def _scan_block(matrix: SymmetricLinearMatrix, block) -> list[tuple[int, int, int, int]]:
    p = matrix.prime
    x, y, z, w = _block_coords(p, block)
    entry = {}
    for (i, j), row in zip(UPPER_TRIANGLE, matrix.coefficients):
        v = (row[0] * x + row[1] * y + row[2] * z + row[3] * w) % p
        entry[(i, j)] = v
        entry[(j, i)] = v
    mask = _minor_masks(entry, p, np.ones(x.shape[0], dtype=bool))
    return [
        (int(x[s]), int(y[s]), int(z[s]), int(w[s])) for s in np.nonzero(mask)[0]
    ]


def _point_blocks(p: int, chunk_points: int = 1 << 18):
    """Descriptors covering P^3(F_p) by normalized representatives
    (first nonzero coordinate 1); kept small so chunks materialize lazily."""
    blocks = [("tail",)]
    rows_per_chunk = max(1, chunk_points // (p * p))
    for start in range(0, p, rows_per_chunk):
        blocks.append(("main", start, min(start + rows_per_chunk, p)))
    return blocks


def scan_nodes_fp(
    matrix: SymmetricLinearMatrix,
    *,
    degenerate_threshold: int = DEFAULT_DEGENERATE_THRESHOLD,
    threads: int = 1,
) -> ScanResult:
    """All points of P^3(F_p) where the matrix has rank <= 2.

    The locus of a generic symmetroid is ten points; any count above
    ``degenerate_threshold`` flags a suspected positive-dimensional locus.
    The enumeration is exhaustive over normalized representatives and is
    chunked; with ``threads > 1`` chunks run in a thread pool, and the
    final point list is sorted lexicographically either way.
    """
    p = matrix.prime
    if p > _PRIME_CAP:
        raise ResourceError(
            f"scan enumerates p^3 + p^2 + p + 1 points; prime capped at {_PRIME_CAP}"
        )
    blocks = _point_blocks(p)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda blk: _scan_block(matrix, blk), blocks))
    else:
        results = [_scan_block(matrix, blk) for blk in blocks]
    points = sorted(pt for chunk in results for pt in chunk)
    return ScanResult(
        prime=p,
        points=tuple(points),
        degenerate=len(points) > degenerate_threshold,
        threshold=degenerate_threshold,
    )


@dataclass(frozen=True)
class QuadricCertificate:
    prime: int
    rank: int
    certified: bool

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "evaluation_rank": self.rank,
            "no_quadric_certified": self.certified,
            "evidence": "finite-field rank; probabilistic evidence only",
        }


def no_quadric_certificate(points, p: int) -> QuadricCertificate:
    """Rank of the 10x10 quadric-monomial evaluation matrix at ten points.

    Full rank certifies that no quadric over F_p passes through all ten
    points, the finite-field counterpart of the Hilbert-series check in
    :mod:`nodalcodes.series`.
    """
    field = PrimeField(p)
    pts = [tuple(field.validate(c) for c in pt) for pt in points]
    if len(pts) != 10:
        raise DomainError(f"expected exactly 10 points, got {len(pts)}")
    normalized = set()
    for pt in pts:
        first = next((c for c in pt if c % p), None)
        if first is None:
            raise DomainError("(0:0:0:0) is not a projective point")
        inv = pow(first, -1, p)
        normalized.add(tuple(c * inv % p for c in pt))
    if len(normalized) != 10:
        raise DomainError("points must be pairwise distinct projectively")
    rows = []
    for pt in pts:
        rows.append([pt[i] * pt[j] % p for i, j in QUADRIC_MONOMIALS])
    rank = rank_and_rref(ExactMatrix.from_rows(field, rows))[0]
    return QuadricCertificate(prime=p, rank=rank, certified=rank == 10)


# --- seeded generators --------------------------------------------------------


def random_symmetric_matrix(p: int, seed: int) -> SymmetricLinearMatrix:
    """Uniformly random linear forms in the upper triangle.

    The rank-2 locus of such a matrix is ten points over the algebraic
    closure, but Frobenius mixes them, so the scan typically sees only a
    few of them; use :func:`random_symmetroid_matrix` when the full ten-point
    locus should be visible over F_p.
    """
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=(10, 4))
    return SymmetricLinearMatrix(p, tuple(tuple(int(c) for c in row) for row in coeffs))


def random_symmetroid_matrix(p: int, seed: int) -> SymmetricLinearMatrix:
    """Seeded random symmetroid whose ten rank-2 points are all F_p-rational.

    Draws six random points of P^3(F_p) whose quadric conditions are
    independent and takes the four-dimensional web of quadrics through
    them, written as a symmetric matrix pencil.  The rank-2 members of the
    web are the quadrics splitting into two planes of three points each,
    one for each of the ten 3+3 partitions, so the scan finds them all.
    """
    field = PrimeField(p)
    rng = np.random.default_rng(seed)
    while True:
        pts = [tuple(int(c) for c in rng.integers(0, p, size=4)) for _ in range(6)]
        if any(all(c % p == 0 for c in pt) for pt in pts):
            continue
        rows = [[pt[i] * pt[j] % p for i, j in QUADRIC_MONOMIALS] for pt in pts]
        eval_matrix = ExactMatrix.from_rows(field, rows)
        if rank_and_rref(eval_matrix)[0] != 6:
            continue
        web_basis = nullspace_basis(eval_matrix)  # 4 quadrics through the 6 points
        inv2 = pow(2, -1, p)
        symmetric = []
        for q in web_basis:
            m = [[0] * 4 for _ in range(4)]
            for (i, j), c in zip(QUADRIC_MONOMIALS, q):
                if i == j:
                    m[i][i] = c % p
                else:
                    m[i][j] = m[j][i] = c * inv2 % p
            symmetric.append(m)
        coeffs = tuple(
            tuple(symmetric[k][i][j] for k in range(4)) for i, j in UPPER_TRIANGLE
        )
        return SymmetricLinearMatrix(p, coeffs)
