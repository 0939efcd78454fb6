"""Node configurations, vanishing dimensions, and the defect of a double solid.

A double cover of P^3 branched over an even-degree surface with mu nodes
has second cohomology of rank 1 + mu + d.  The defect d measures how
special the node positions are: it is the excess of the actual over the
expected dimension of the space of forms of degree 3b/2 - 4 through the
nodes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import DataError, DomainError
from .fields import Field, PrimeField, QQ, Scalar
from .forms import (
    HomogeneousForm,
    Monomial,
    evaluate_at,
    gradient,
    grevlex_key,
    hessian_rank_at,
    parse_form,
)
from .linalg import ExactMatrix, exact_rank

Point = tuple[Scalar, Scalar, Scalar, Scalar]


def normalize_point(field: Field, coords: Sequence[Scalar]) -> Point:
    """Scale so the first nonzero coordinate is 1; canonical projective representative."""
    if len(coords) != 4:
        raise DataError(f"expected 4 coordinates, got {len(coords)}")
    vals = [field.validate(c) for c in coords]
    for v in vals:
        if not field.is_zero(v):
            inv = field.inverse(v)
            return tuple(field.mul(inv, c) for c in vals)
    raise DataError("(0:0:0:0) is not a projective point")


@dataclass(frozen=True)
class NodeConfiguration:
    """A set of distinct projective points, the ambient surface degree, and
    optionally the surface equation itself."""

    degree: int
    field: Field
    points: tuple[Point, ...]
    surface: HomogeneousForm | None = None

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError(f"surface degree must be positive, got {self.degree}")
        seen = set()
        normalized = []
        for coords in self.points:
            pt = normalize_point(self.field, coords)
            if pt in seen:
                raise DataError(f"duplicate projective point {pt}")
            seen.add(pt)
            normalized.append(pt)
        object.__setattr__(self, "points", tuple(normalized))
        if self.surface is not None:
            if self.surface.field != self.field:
                raise DataError("surface and nodes live over different fields")
            if not self.surface.is_zero() and self.surface.degree != self.degree:
                raise DataError(
                    f"surface has degree {self.surface.degree}, configuration says {self.degree}"
                )

    @property
    def mu(self) -> int:
        return len(self.points)


def verify_node(f: HomogeneousForm, point: Sequence[Scalar]) -> bool:
    """True iff the point is an ordinary double point of {f = 0}:
    f and all four partials vanish there and the Hessian has rank exactly 3."""
    pt = normalize_point(f.field, point)
    if not f.field.is_zero(evaluate_at(f, pt)):
        return False
    for g in gradient(f):
        if not f.field.is_zero(evaluate_at(g, pt)):
            return False
    return hessian_rank_at(f, pt) == 3


def verify_configuration(cfg: NodeConfiguration) -> list[bool]:
    """Per-node verdict of :func:`verify_node` against the attached surface."""
    if cfg.surface is None:
        raise DataError("configuration has no surface attached")
    return [verify_node(cfg.surface, pt) for pt in cfg.points]


def monomial_basis(d: int) -> list[Monomial]:
    """All degree-d monomials in x, y, z, w in graded reverse-lex order."""
    if d < 0:
        raise DomainError(f"degree must be non-negative, got {d}")
    monos = [
        (i, j, k, d - i - j - k)
        for i in range(d + 1)
        for j in range(d + 1 - i)
        for k in range(d + 1 - i - j)
    ]
    monos.sort(key=grevlex_key)
    assert len(monos) == comb(d + 3, 3)
    return monos


def evaluation_matrix(cfg: NodeConfiguration, d: int) -> ExactMatrix:
    """mu x C(d+3,3) matrix of degree-d monomials evaluated at the nodes."""
    f = cfg.field
    basis = monomial_basis(d)
    rows = []
    for pt in cfg.points:
        row = []
        for mono in basis:
            v = f.one
            for coord, e in zip(pt, mono):
                for _ in range(e):
                    v = f.mul(v, coord)
            row.append(v)
        rows.append(row)
    return ExactMatrix.from_rows(f, rows)


def vanishing_dimension(cfg: NodeConfiguration, d: int) -> int:
    """Dimension of the space of degree-d forms vanishing at every node."""
    if d < 0:
        raise DomainError(f"degree must be non-negative, got {d}")
    total = comb(d + 3, 3)
    if cfg.mu == 0:
        return total
    return total - exact_rank(evaluation_matrix(cfg, d))


@dataclass(frozen=True)
class DefectReport:
    """Defect computation breakdown.

    ``defect = dim_m - estimate`` with ``estimate = C(3b/2-1, 3) - mu``;
    the value is signed and never clamped, so a negative defect flags
    inconsistent input rather than being hidden.
    """

    b: int
    mu: int
    m_degree: int
    dim_m: int
    estimate: int
    defect: int

    def to_dict(self) -> dict:
        return {
            "degree": self.b,
            "mu": self.mu,
            "form_degree": self.m_degree,
            "dim_vanishing_space": self.dim_m,
            "estimate": self.estimate,
            "defect": self.defect,
        }


def defect(b: int, mu: int, dim_m: int) -> DefectReport:
    """Defect of the double solid branched over a degree-b surface with mu
    nodes, given the dimension of the space of degree-(3b/2-4) forms
    through the nodes."""
    if b % 2 != 0:
        raise DomainError(f"branch degree must be even, got {b}")
    if b < 2:
        raise DomainError(f"branch degree must be at least 2, got {b}")
    if mu < 0 or dim_m < 0:
        raise DomainError("mu and dim_m must be non-negative")
    m_degree = 3 * b // 2 - 4
    estimate = comb(3 * b // 2 - 1, 3) - mu
    return DefectReport(b, mu, m_degree, dim_m, estimate, dim_m - estimate)


def defect_from_nodes(cfg: NodeConfiguration) -> DefectReport:
    """Compute the defect directly from a node configuration."""
    b = cfg.degree
    if b % 2 != 0:
        raise DomainError(f"branch degree must be even, got {b}")
    m_degree = 3 * b // 2 - 4
    dim_m = vanishing_dimension(cfg, m_degree) if m_degree >= 0 else 0
    return defect(b, cfg.mu, dim_m)


# --- node file format --------------------------------------------------------
#
# { "degree": <even int>,
#   "field": "rational" | {"prime": <int>},
#   "surface": <optional polynomial string>,
#   "nodes": [["c0","c1","c2","c3"], ...] }   (coordinates "p/q" allowed over Q)


def _field_from_json(spec) -> Field:
    if spec == "rational":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"prime"}:
        return PrimeField(spec["prime"])
    raise DataError(f"bad field spec {spec!r}; use \"rational\" or {{\"prime\": p}}")


def _field_to_json(field: Field):
    return "rational" if field == QQ else {"prime": field.p}


def config_from_dict(data: dict) -> NodeConfiguration:
    try:
        degree = data["degree"]
        nodes = data["nodes"]
    except (KeyError, TypeError) as exc:
        raise DataError(f"node file is missing {exc}") from exc
    if not isinstance(degree, int):
        raise DataError("degree must be an integer")
    field = _field_from_json(data.get("field", "rational"))
    points = []
    for raw in nodes:
        if len(raw) != 4:
            raise DataError(f"node {raw!r} does not have 4 coordinates")
        points.append(tuple(field.parse(str(c)) for c in raw))
    surface = None
    if data.get("surface") is not None:
        surface = parse_form(data["surface"], field)
    return NodeConfiguration(degree, field, tuple(points), surface)


def config_to_dict(cfg: NodeConfiguration) -> dict:
    f = cfg.field
    out = {
        "degree": cfg.degree,
        "field": _field_to_json(f),
        "nodes": [[f.to_str(c) for c in pt] for pt in cfg.points],
    }
    if cfg.surface is not None:
        out["surface"] = str(cfg.surface)
    return out


def load_node_file(path: str) -> NodeConfiguration:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read node file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"node file is not valid JSON: {exc}") from exc
    return config_from_dict(data)
