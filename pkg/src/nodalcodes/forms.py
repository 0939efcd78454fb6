"""Homogeneous polynomials in x, y, z, w with exact coefficients.

Sparse representation: a form is a degree together with a map from
exponent vectors to nonzero coefficients.  Printing uses graded
reverse-lexicographic term order, so parse -> print -> parse is a fixed
point and printed output is canonical.

Grammar (ASCII, whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff? ('*'? factor)*
    factor := var ('^' uint)?
    var    := 'x' | 'y' | 'z' | 'w'
    coeff  := int | int '/' uint
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import DataError, HomogeneityError, ParseError
from .fields import Field, QQ, Scalar
from .linalg import ExactMatrix, rank_and_rref

VARIABLES = ("x", "y", "z", "w")

Monomial = tuple[int, int, int, int]


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def grevlex_key(m: Monomial):
    """Sort key: ascending by this key = descending graded reverse-lex order."""
    return (-sum(m),) + tuple(reversed(m))


def _format_monomial(m: Monomial) -> str:
    parts = []
    for var, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class HomogeneousForm:
    """A homogeneous polynomial of fixed degree; zero coefficients never stored."""

    degree: int
    field: Field
    terms: dict[Monomial, Scalar] = dc_field(default_factory=dict)

    def __post_init__(self):
        for m, c in self.terms.items():
            if len(m) != 4 or any(e < 0 for e in m):
                raise DataError(f"bad exponent vector {m}")
            if monomial_degree(m) != self.degree:
                raise HomogeneityError(self.degree, monomial_degree(m))
            if self.field.is_zero(c):
                raise DataError("zero coefficient stored in a form")

    @classmethod
    def from_terms(cls, degree: int, field: Field, terms: dict) -> "HomogeneousForm":
        cleaned = {}
        for m, c in terms.items():
            c = field.validate(c)
            if not field.is_zero(c):
                cleaned[tuple(m)] = c
        return cls(degree, field, cleaned)

    @classmethod
    def zero_form(cls, degree: int, field: Field) -> "HomogeneousForm":
        return cls(max(degree, 0), field, {})

    @classmethod
    def variable(cls, index: int, field: Field) -> "HomogeneousForm":
        m = tuple(1 if i == index else 0 for i in range(4))
        return cls(1, field, {m: field.one})

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]))

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check_compatible(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise HomogeneityError(self.degree, other.degree)
        terms = dict(self.terms)
        f = self.field
        for m, c in other.terms.items():
            s = f.add(terms.get(m, f.zero), c)
            if f.is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        return HomogeneousForm(self.degree, f, terms)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + other.scaled(self.field.neg(self.field.one))

    def __mul__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check_compatible(other)
        f = self.field
        if self.is_zero() or other.is_zero():
            return HomogeneousForm.zero_form(self.degree + other.degree, f)
        terms: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = f.add(terms.get(m, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return HomogeneousForm(self.degree + other.degree, f, terms)

    def scaled(self, c: Scalar) -> "HomogeneousForm":
        f = self.field
        c = f.validate(c)
        if f.is_zero(c):
            return HomogeneousForm.zero_form(self.degree, f)
        return HomogeneousForm(self.degree, f, {m: f.mul(c, v) for m, v in self.terms.items()})

    def _check_compatible(self, other: "HomogeneousForm") -> None:
        if self.field != other.field:
            raise DataError("forms live over different fields")

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        f = self.field
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mono = _format_monomial(m)
            negative = f.characteristic == 0 and c < 0
            mag = f.neg(c) if negative else c
            coeff_str = f.to_str(mag)
            if mono and coeff_str == "1":
                body = mono
            elif mono:
                body = f"{coeff_str}*{mono}"
            else:
                body = coeff_str
            if i == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"HomogeneousForm({self})"


def evaluate_at(form: HomogeneousForm, point: Sequence[Scalar]) -> Scalar:
    """Exact value of the form at a point given by 4 coordinates."""
    f = form.field
    if len(point) != 4:
        raise DataError(f"expected 4 coordinates, got {len(point)}")
    coords = [f.validate(c) for c in point]
    total = f.zero
    for m, c in form.terms.items():
        v = c
        for coord, e in zip(coords, m):
            for _ in range(e):
                v = f.mul(v, coord)
        total = f.add(total, v)
    return total


def partial(form: HomogeneousForm, index: int) -> HomogeneousForm:
    """Formal partial derivative with respect to x, y, z or w."""
    f = form.field
    new_degree = max(form.degree - 1, 0)
    terms: dict[Monomial, Scalar] = {}
    for m, c in form.terms.items():
        e = m[index]
        if e == 0:
            continue
        coeff = f.mul(c, f.from_int(e))
        if f.is_zero(coeff):
            continue  # exponent divisible by the characteristic
        dm = tuple(v - 1 if i == index else v for i, v in enumerate(m))
        terms[dm] = coeff
    return HomogeneousForm(new_degree, f, terms)


def gradient(form: HomogeneousForm) -> tuple[HomogeneousForm, ...]:
    """The four formal partials; each homogeneous of degree deg - 1."""
    return tuple(partial(form, i) for i in range(4))


def hessian_rank_at(form: HomogeneousForm, point: Sequence[Scalar]) -> int:
    """Rank (0..4) of the symmetric matrix of second partials at a point."""
    partials = gradient(form)
    rows = []
    for i in range(4):
        second = gradient(partials[i])
        rows.append([evaluate_at(second[j], point) for j in range(4)])
    matrix = ExactMatrix.from_rows(form.field, rows)
    return rank_and_rref(matrix)[0]


# --- parsing ---------------------------------------------------------------

_VAR_INDEX = {v: i for i, v in enumerate(VARIABLES)}


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_int(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def take_char(self) -> str:
        self._skip_ws()
        ch = self.text[self.pos]
        self.pos += 1
        return ch


def parse_form(text: str, field: Field = QQ) -> HomogeneousForm:
    """Parse a homogeneous polynomial; canonical sparse form.

    Raises :class:`HomogeneityError` (with the two offending degrees) for
    mixed-degree input and :class:`ParseError` (with position) for
    anything outside the grammar, including unknown identifiers.
    """
    tok = _Tokenizer(text)
    terms: dict[Monomial, Scalar] = {}
    degree: int | None = None

    def add_term(sign: int, coeff: Scalar, exps: list[int], term_pos: int):
        nonlocal degree
        d = sum(exps)
        if degree is None:
            degree = d
        elif d != degree:
            raise HomogeneityError(degree, d)
        c = field.mul(field.from_int(sign), coeff)
        m = tuple(exps)
        s = field.add(terms.get(m, field.zero), c)
        if field.is_zero(s):
            terms.pop(m, None)
        else:
            terms[m] = s

    first = True
    while True:
        sign = 1
        ch = tok.peek()
        if ch is None:
            if first:
                raise ParseError("empty polynomial", tok.pos)
            break
        if ch in "+-":
            if first and ch == "+":
                tok.take_char()
            elif first:  # leading minus
                tok.take_char()
                sign = -1
            else:
                sign = -1 if tok.take_char() == "-" else 1
        elif not first:
            raise ParseError(f"expected '+' or '-', found {ch!r}", tok.pos)
        first = False

        term_pos = tok.pos
        coeff = field.one
        exps = [0, 0, 0, 0]
        saw_anything = False

        ch = tok.peek()
        if ch is not None and ch.isdigit():
            num = tok.take_int()
            if tok.peek() == "/":
                tok.take_char()
                den_pos = tok.pos
                den = tok.take_int()
                if den == 0:
                    raise ParseError("zero denominator", den_pos)
                coeff = field.parse(f"{num}/{den}")
            else:
                coeff = field.from_int(num)
            saw_anything = True

        while True:
            ch = tok.peek()
            if ch == "*":
                tok.take_char()
                ch = tok.peek()
                if ch is None or ch not in _VAR_INDEX:
                    raise ParseError("expected a variable after '*'", tok.pos)
            if ch is None or ch in "+-":
                break
            if ch in _VAR_INDEX:
                tok.take_char()
                e = 1
                if tok.peek() == "^":
                    tok.take_char()
                    e = tok.take_int()
                exps[_VAR_INDEX[ch]] += e
                saw_anything = True
            elif ch.isalpha():
                raise ParseError(f"unknown identifier {ch!r}", tok.pos)
            elif ch.isdigit():
                raise ParseError("coefficient must come first in a term", tok.pos)
            else:
                raise ParseError(f"unexpected character {ch!r}", tok.pos)

        if not saw_anything:
            raise ParseError("empty term", term_pos)
        add_term(sign, coeff, exps, term_pos)

    return HomogeneousForm(degree if degree is not None else 0, field, terms)
