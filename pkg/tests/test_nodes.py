"""Node verification, evaluation matrices, vanishing dimensions, defects."""

import json
import random
from fractions import Fraction
from math import comb

import pytest

from nodalcodes.errors import DataError, DomainError
from nodalcodes.fields import PrimeField, QQ
from nodalcodes.forms import parse_form
from nodalcodes.nodes import (
    NodeConfiguration,
    config_from_dict,
    config_to_dict,
    defect,
    defect_from_nodes,
    evaluation_matrix,
    load_node_file,
    monomial_basis,
    normalize_point,
    vanishing_dimension,
    verify_configuration,
    verify_node,
)


class TestVerifyNode:
    def test_local_cone_model_is_node(self):
        assert verify_node(parse_form("x^2 + y^2 + z^2"), (0, 0, 0, 1))

    def test_smooth_point_is_not(self):
        assert not verify_node(parse_form("x"), (0, 1, 0, 0))

    def test_hessian_rank_two_is_not(self):
        assert not verify_node(parse_form("x^2 + y^2"), (0, 0, 0, 1))

    def test_nonvanishing_point_is_not(self):
        assert not verify_node(parse_form("x^2 + y^2 + z^2"), (1, 0, 0, 1))


class TestMonomialBasis:
    def test_counts(self):
        assert len(monomial_basis(0)) == 1
        assert len(monomial_basis(2)) == 10
        assert len(monomial_basis(5)) == 56

    def test_degree_two_grevlex_order(self):
        names = {
            (2, 0, 0, 0): "x^2", (1, 1, 0, 0): "xy", (0, 2, 0, 0): "y^2",
            (1, 0, 1, 0): "xz", (0, 1, 1, 0): "yz", (0, 0, 2, 0): "z^2",
            (1, 0, 0, 1): "xw", (0, 1, 0, 1): "yw", (0, 0, 1, 1): "zw",
            (0, 0, 0, 2): "w^2",
        }
        got = [names[m] for m in monomial_basis(2)]
        assert got == ["x^2", "xy", "y^2", "xz", "yz", "z^2", "xw", "yw", "zw", "w^2"]

    def test_negative_degree_rejected(self):
        with pytest.raises(DomainError):
            monomial_basis(-1)


def _config(points, degree=4, field=QQ, surface=None):
    return NodeConfiguration(degree, field, tuple(points), surface)


class TestVanishingDimension:
    def test_no_nodes(self):
        assert vanishing_dimension(_config([]), 2) == 10

    def test_one_node(self):
        assert vanishing_dimension(_config([(1, 0, 0, 0)]), 2) == 9

    def test_monotone_under_adding_nodes(self):
        rng = random.Random(11)
        points = []
        previous = None
        while len(points) < 9:
            pt = tuple(Fraction(rng.randint(-5, 5)) for _ in range(4))
            try:
                cfg = _config(points + [pt])
            except DataError:
                continue
            points.append(pt)
            dim = vanishing_dimension(cfg, 3)
            if previous is not None:
                assert previous - 1 <= dim <= previous
            previous = dim

    def test_duplicate_points_rejected(self):
        with pytest.raises(DataError):
            _config([(1, 2, 3, 4), (2, 4, 6, 8)])  # same projective point

    def test_matches_independent_oracle(self):
        # independent route: build the evaluation matrix directly from
        # integer monomial powers and run a plain fraction elimination
        rng = random.Random(42)
        for _ in range(50):
            npts = rng.randint(1, 12)
            d = rng.randint(1, 3)
            pts, cfg = [], None
            while cfg is None:
                pts = [
                    tuple(Fraction(rng.randint(-4, 4)) for _ in range(4))
                    for _ in range(npts)
                ]
                try:
                    cfg = _config(pts)
                except DataError:
                    cfg = None
            monos = [
                (i, j, k, d - i - j - k)
                for i in range(d + 1)
                for j in range(d + 1 - i)
                for k in range(d + 1 - i - j)
            ]
            rows = [
                [
                    pt[0] ** m[0] * pt[1] ** m[1] * pt[2] ** m[2] * pt[3] ** m[3]
                    for m in monos
                ]
                for pt in cfg.points
            ]
            assert vanishing_dimension(cfg, d) == len(monos) - _plain_rank(rows)


def _plain_rank(rows):
    mat = [list(r) for r in rows]
    rank, ncols = 0, len(mat[0])
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c] != 0:
                factor = mat[i][c] / mat[rank][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


class TestDefect:
    def test_quartic_ten_nodes(self):
        assert defect(4, 10, 0).defect == 0

    def test_quartic_eleven_nodes(self):
        assert defect(4, 11, 0).defect == 1

    def test_sextic_sixty_five_nodes(self):
        report = defect(6, 65, 4)
        assert report.defect == 13
        assert report.m_degree == 5
        assert report.estimate == comb(8, 3) - 65 == -9

    def test_nodeless_surfaces_have_zero_defect(self):
        for b in (4, 6, 8):
            full = comb(3 * b // 2 - 1, 3)
            assert defect(b, 0, full).defect == 0

    def test_odd_degree_rejected(self):
        with pytest.raises(DomainError):
            defect(5, 10, 0)

    def test_defect_is_signed_and_unclamped(self):
        # inconsistent input: a reported dim below the estimate goes negative
        assert defect(4, 2, 0).defect == -8

    def test_defect_from_nodes_empty_quartic(self):
        assert defect_from_nodes(_config([])).defect == 0

    def test_eleven_generic_points_defect_one(self):
        rng = random.Random(2)
        while True:
            pts = [tuple(Fraction(rng.randint(-7, 7)) for _ in range(4)) for _ in range(11)]
            try:
                cfg = _config(pts)
            except DataError:
                continue
            # generic-rank gate: the evaluation matrix must have full rank 10
            from nodalcodes.linalg import rank_and_rref

            if rank_and_rref(evaluation_matrix(cfg, 2))[0] == 10:
                break
        report = defect_from_nodes(cfg)
        assert report.dim_m == 0
        assert report.estimate == -1
        assert report.defect == 1


class TestSymmetroidNodesIntegration:
    def test_scanned_ten_nodes_span_all_quadric_conditions(self, scan_survey):
        seed, matrix, result = next(
            (s for s in scan_survey if not s[2].degenerate and len(s[2].points) == 10)
        )
        field = PrimeField(result.prime)
        cfg = NodeConfiguration(4, field, result.points)
        assert vanishing_dimension(cfg, 2) == 0
        assert defect_from_nodes(cfg).defect == 0


class TestNodeFiles:
    def test_round_trip(self, tmp_path):
        cfg = _config(
            [(Fraction(1, 2), 1, 0, 3), (0, 1, 1, 1)],
            surface=None,
        )
        data = config_to_dict(cfg)
        again = config_from_dict(json.loads(json.dumps(data)))
        assert again == cfg

    def test_load_with_surface_and_verify(self, tmp_path):
        payload = {
            "degree": 2,
            "field": "rational",
            "surface": "x^2 + y^2 + z^2",
            "nodes": [["0", "0", "0", "1"]],
        }
        path = tmp_path / "nodes.json"
        path.write_text(json.dumps(payload))
        cfg = load_node_file(str(path))
        assert verify_configuration(cfg) == [True]

    def test_prime_field_mode(self):
        cfg = config_from_dict(
            {"degree": 4, "field": {"prime": 7}, "nodes": [["1", "2", "3", "4"], ["1", "0", "0", "0"]]}
        )
        assert cfg.field == PrimeField(7)
        assert cfg.mu == 2

    def test_missing_keys(self):
        with pytest.raises(DataError):
            config_from_dict({"nodes": []})

    def test_zero_point_rejected(self):
        with pytest.raises(DataError):
            normalize_point(QQ, (0, 0, 0, 0))
