"""Finite-field rank-2 locus scans and quadric interpolation certificates."""

import itertools
import json
import random

import pytest

from nodalcodes.errors import DataError, DomainError, ResourceError
from nodalcodes.symmetroid import (
    SymmetricLinearMatrix,
    load_matrix_file,
    matrix_from_dict,
    minors_vanish_at,
    no_quadric_certificate,
    random_symmetric_matrix,
    random_symmetroid_matrix,
    scan_nodes_fp,
)

# upper-triangle entry order: (0,0),(0,1),(0,2),(0,3),(1,1),(1,2),(1,3),(2,2),(2,3),(3,3)
X_IDENTITY = ["x", "0", "0", "0", "x", "0", "0", "x", "0", "x"]
DIAG_XYZW = ["x", "0", "0", "0", "y", "0", "0", "z", "0", "w"]


def _enumerate_p3(p):
    seen = set()
    for pt in itertools.product(range(p), repeat=4):
        if all(c == 0 for c in pt):
            continue
        first = next(c for c in pt if c)
        inv = pow(first, -1, p)
        seen.add(tuple(c * inv % p for c in pt))
    return seen


def _naive_rank_mod_p(m, p):
    mat = [[v % p for v in row] for row in m]
    rank = 0
    for c in range(4):
        pivot = next((i for i in range(rank, 4) if mat[i][c] % p), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][c], -1, p)
        mat[rank] = [v * inv % p for v in mat[rank]]
        for i in range(4):
            if i != rank and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


class TestScan:
    def test_x_identity_is_a_degenerate_plane(self):
        # rank drops below 3 only on the plane x = 0, which has p^2+p+1 points
        p = 7
        m = SymmetricLinearMatrix.from_strings(p, X_IDENTITY)
        result = scan_nodes_fp(m)
        assert len(result.points) == p * p + p + 1
        assert result.degenerate  # 57 > 50 with the default threshold
        assert all(pt[0] == 0 for pt in result.points)

    def test_diagonal_matrix_coordinate_lines(self):
        # rank <= 2 iff at least two coordinates vanish: six lines through
        # four points, 6(p-1) + 4 points at p = 5
        p = 5
        m = SymmetricLinearMatrix.from_strings(p, DIAG_XYZW)
        result = scan_nodes_fp(m, degenerate_threshold=20)
        assert len(result.points) == 6 * (p - 1) + 4 == (p + 1) * 6 - 8
        assert result.degenerate  # positive-dimensional, low threshold makes it visible
        # independent enumeration oracle over all of P^3(F_5)
        expected = {
            pt for pt in _enumerate_p3(p)
            if _naive_rank_mod_p([[pt[0], 0, 0, 0], [0, pt[1], 0, 0],
                                  [0, 0, pt[2], 0], [0, 0, 0, pt[3]]], p) <= 2
        }
        assert set(result.points) == expected

    def test_scan_points_satisfy_all_sixteen_minors(self, scan_survey):
        for _, matrix, result in scan_survey[:5]:
            for pt in result.points:
                assert minors_vanish_at(matrix, pt)

    def test_random_sample_second_pass_finds_no_missed_points(self, scan_survey):
        _, matrix, result = scan_survey[0]
        p = result.prime
        rng = random.Random(606)
        point_set = set(result.points)
        # 1% of P^3(F_p), independently normalized and checked pointwise
        for _ in range((p**3 + p**2 + p + 1) // 100):
            pt = tuple(rng.randrange(p) for _ in range(4))
            if all(c == 0 for c in pt):
                continue
            first = next(c for c in pt if c)
            inv = pow(first, -1, p)
            normalized = tuple(c * inv % p for c in pt)
            if minors_vanish_at(matrix, normalized):
                assert normalized in point_set

    def test_twenty_seed_survey(self, scan_survey):
        non_degenerate = [s for s in scan_survey if not s[2].degenerate]
        assert len(non_degenerate) >= 15
        for seed, matrix, result in non_degenerate:
            assert len(result.points) == 10, f"seed {seed}"
            cert = no_quadric_certificate(result.points, result.prime)
            assert cert.rank == 10 and cert.certified, f"seed {seed}"

    def test_threads_match_single_thread(self):
        m = random_symmetroid_matrix(31, 3)
        a = scan_nodes_fp(m, threads=1)
        b = scan_nodes_fp(m, threads=4)
        assert a == b

    def test_points_sorted_and_distinct(self, scan_survey):
        _, _, result = scan_survey[1]
        assert list(result.points) == sorted(set(result.points))

    def test_prime_cap(self):
        m = SymmetricLinearMatrix.from_strings(1031, X_IDENTITY)
        with pytest.raises(ResourceError):
            scan_nodes_fp(m)

    def test_even_prime_rejected(self):
        with pytest.raises(DomainError):
            SymmetricLinearMatrix.from_strings(2, X_IDENTITY)
        with pytest.raises(DomainError):
            SymmetricLinearMatrix.from_strings(9, X_IDENTITY)


class TestCertificate:
    def test_points_on_a_common_quadric_fail(self):
        # ten points on the Segre quadric xw = yz over F_7
        p = 7
        pairs = [(0, 1), (1, 1), (1, 2), (1, 3), (2, 1)]
        points = []
        for u0, u1 in pairs[:2]:
            for v0, v1 in pairs[:5]:
                points.append((u0 * v0 % p, u0 * v1 % p, u1 * v0 % p, u1 * v1 % p))
        assert len(points) == 10
        cert = no_quadric_certificate(points, p)
        assert cert.rank <= 9
        assert not cert.certified

    def test_wrong_count_rejected(self):
        with pytest.raises(DomainError):
            no_quadric_certificate([(1, 0, 0, 0)] * 9, 7)

    def test_repeated_point_rejected(self):
        pts = [(1, i, i * i % 7, 1) for i in range(9)] + [(2, 0, 0, 2)]
        # (2,0,0,2) is projectively (1,0,0,1) = the i=0 entry
        with pytest.raises(DomainError):
            no_quadric_certificate(pts, 7)

    def test_certified_on_survey(self, scan_survey):
        for _, _, result in scan_survey:
            if not result.degenerate and len(result.points) == 10:
                assert no_quadric_certificate(result.points, result.prime).certified
                break


class TestGenerators:
    def test_symmetroid_generator_deterministic(self):
        a = random_symmetroid_matrix(101, 5)
        b = random_symmetroid_matrix(101, 5)
        assert a == b

    def test_uniform_generator_rarely_sees_the_full_locus(self):
        # Frobenius shuffles the ten geometric points; a uniform matrix at a
        # moderate prime almost never shows all of them.  Fixed seeds keep
        # this observational test stable.
        counts = []
        for seed in range(5):
            m = random_symmetric_matrix(31, seed)
            result = scan_nodes_fp(m)
            if not result.degenerate:
                counts.append(len(result.points))
        assert counts and all(c <= 10 for c in counts)

    def test_small_prime_still_works(self):
        # special position of the six points is common at small fields, so
        # pick a seed whose locus is honestly zero-dimensional
        m = random_symmetroid_matrix(13, 2)
        result = scan_nodes_fp(m)
        assert len(result.points) == 10
        assert no_quadric_certificate(result.points, 13).certified

    def test_small_prime_curve_can_evade_default_threshold(self):
        # at p=13 a one-dimensional locus may have ~p+1 points, below the
        # default threshold of 50; the threshold knob exists for that
        m = random_symmetroid_matrix(13, 0)
        result = scan_nodes_fp(m)
        assert len(result.points) == 20
        assert not result.degenerate
        assert scan_nodes_fp(m, degenerate_threshold=15).degenerate


class TestMatrixFiles:
    def test_round_trip(self, tmp_path):
        m = random_symmetroid_matrix(101, 0)
        data = json.loads(json.dumps(m.to_dict()))
        assert matrix_from_dict(data) == m

    def test_load_file(self, tmp_path):
        path = tmp_path / "matrix.json"
        path.write_text(json.dumps({"prime": 7, "upper_triangle": X_IDENTITY}))
        m = load_matrix_file(str(path))
        assert m.prime == 7

    def test_wrong_entry_count(self):
        with pytest.raises(DataError):
            matrix_from_dict({"prime": 7, "upper_triangle": ["x"] * 9})

    def test_nonlinear_entry_rejected(self):
        entries = ["x^2"] + ["0"] * 9
        with pytest.raises(DataError):
            SymmetricLinearMatrix.from_strings(7, entries)

    def test_evaluate_is_symmetric(self):
        m = random_symmetroid_matrix(101, 2)
        values = m.evaluate((1, 2, 3, 4))
        for i in range(4):
            for j in range(4):
                assert values[i][j] == values[j][i]
