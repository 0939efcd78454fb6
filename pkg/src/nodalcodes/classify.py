"""Isomorph-free enumeration of the even-set codes of mu-nodal quartics.

The search grows codes one basis word at a time, in weight order
(weak-6, strict-8, weak-10, strict-16).  A word may extend a code only if
every word of the enlarged span stays admissible for a quartic, which
mechanizes the whole weight-addition case analysis.  Duplicates are
rejected by canonical form at each level, so each equivalence class is
visited once.

Two dimension lower bounds (due to Beauville) cut the weight-admissible
list down to the codes that actually occur: dim of the full code is at
least mu - 10, dim of the strictly even subcode at least mu - 11.  They
are applied as a post-filter so the weight-admissible-but-excluded codes
can still be inspected with ``audit=True``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .codes import (
    EvenSetCode,
    EvenSetWord,
    apply_node_permutation,
    canonical_form,
    code_to_dict,
    column_transpositions,
    griesmer_ok,
    weight_enumerator,
)
from .errors import DomainError
from .linalg import bit_rref

MU_MAX = 16

_WORD_CLASSES = ((6, True), (8, False), (10, True), (16, False))


@dataclass(frozen=True)
class TableEntry:
    """One equivalence class of codes: a representative, its dimension, and
    the profile string ``[n,k,{d1_m1,...}]`` (basis multiplicities as
    subscripts, omitted when zero)."""

    code: EvenSetCode
    dim: int
    profile: str
    enumerator: dict[tuple[int, str], int]
    canonical: bytes

    def to_dict(self) -> dict:
        return {
            "profile": self.profile,
            "dim": self.dim,
            "code": code_to_dict(self.code),
            "weights": [
                {"weight": w, "parity": par, "count": c}
                for (w, par), c in sorted(self.enumerator.items())
            ],
        }


@dataclass(frozen=True)
class ClassificationTable:
    mu: int
    entries: tuple[TableEntry, ...]
    excluded: tuple[TableEntry, ...] = ()  # weight-admissible, failing dimension bounds

    def profiles(self) -> list[str]:
        return [e.profile for e in self.entries]

    def to_dict(self, audit: bool = False) -> dict:
        out = {
            "mu": self.mu,
            "count": len(self.entries),
            "entries": [e.to_dict() for e in self.entries],
        }
        if audit:
            out["excluded_by_dimension_bounds"] = [e.to_dict() for e in self.excluded]
        return out


def admissible_words_ext(mu: int) -> list[int]:
    """Every nonzero word a quartic allows: weak of weight 6 or 10,
    strict of weight 8 or 16."""
    words = []
    for weight, weak in _WORD_CLASSES:
        if weight > mu:
            continue
        parity_bit = 1 << mu if weak else 0
        for combo in itertools.combinations(range(mu), weight):
            support = 0
            for i in combo:
                support |= 1 << i
            words.append(support | parity_bit)
    return words


def _span_words(basis: tuple[int, ...]) -> list[int]:
    words = [0]
    for g in basis:
        words += [w ^ g for w in words]
    return words


def _min_weight(words: list[int], mu: int) -> int:
    mask = (1 << mu) - 1
    return min((w & mask).bit_count() for w in words if w)


def _passes_griesmer(basis: tuple[int, ...], mu: int, words: list[int]) -> bool:
    # sound pruning only: every honestly constructed linear code satisfies
    # the bound, so this never rejects a real candidate
    k = len(basis)
    if k == 0:
        return True
    if not griesmer_ok(mu, k, _min_weight(words, mu)):
        return False
    strict = [w for w in words if w and not (w >> mu) & 1]
    if strict:
        k_strict = len(bit_rref(strict))
        if not griesmer_ok(mu, k_strict, _min_weight(strict, mu)):
            return False
    return True


def _orbit_representatives(candidates: list[int], perms: list[tuple[int, ...]], mu: int) -> list[int]:
    """One candidate per orbit under the supplied permutations."""
    if not perms:
        return candidates
    seen: set[int] = set()
    reps = []
    for w in candidates:
        if w in seen:
            continue
        orbit = {w}
        frontier = [w]
        while frontier:
            x = frontier.pop()
            for p in perms:
                y = apply_node_permutation(x, p, mu)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        reps.append(w)
    return reps


def _enumerate_admissible(mu: int, griesmer_prune: bool) -> list[tuple[int, ...]]:
    """All codes with every nonzero word admissible, one basis per
    permutation class, found by isomorph-rejected basis extension."""
    admissible = admissible_words_ext(mu)
    admissible_set = set(admissible)
    seen_word_sets: set[frozenset[int]] = set()
    found: list[tuple[int, ...]] = []

    level: dict[bytes, tuple[int, ...]] = {}
    for weight, weak in _WORD_CLASSES:
        if weight > mu:
            continue
        w = (1 << weight) - 1 | ((1 << mu) if weak else 0)
        basis = (w,)
        if griesmer_prune and not _passes_griesmer(basis, mu, _span_words(basis)):
            continue
        code = _as_code(mu, basis)
        level[canonical_form(code)] = basis

    while level:
        found.extend(level.values())
        next_level: dict[bytes, tuple[int, ...]] = {}
        for basis in level.values():
            words = _span_words(basis)
            word_set = set(words)
            nonzero = [w for w in words if w]
            candidates = [w for w in admissible if w not in word_set]
            for s in nonzero:
                candidates = [w for w in candidates if (w ^ s) in admissible_set]
                if not candidates:
                    break
            if not candidates:
                continue
            perms = column_transpositions(_as_code(mu, basis))
            for w in _orbit_representatives(candidates, perms, mu):
                new_basis = basis + (w,)
                new_words = frozenset(_span_words(new_basis))
                if new_words in seen_word_sets:
                    continue
                seen_word_sets.add(new_words)
                if griesmer_prune and not _passes_griesmer(
                    new_basis, mu, list(new_words)
                ):
                    continue
                enc = canonical_form(_as_code(mu, new_basis))
                if enc not in next_level:
                    next_level[enc] = new_basis
        level = next_level
    return found


def _as_code(mu: int, basis: tuple[int, ...]) -> EvenSetCode:
    return EvenSetCode.from_words(
        mu, tuple(EvenSetWord.from_ext(mu, w) for w in basis)
    )


def _greedy_profile(code: EvenSetCode) -> str:
    """Profile string with basis chosen greedily by ascending weight, which
    maximizes the number of minimum-weight basis words."""
    mu, k = code.mu, code.dim
    mask = (1 << mu) - 1
    words = sorted(
        (w for w in code.words_ext() if w),
        key=lambda w: ((w & mask).bit_count(), w),
    )
    chosen_weights: list[int] = []
    basis: list[int] = []
    for w in words:
        enlarged = bit_rref(basis + [w])
        if len(enlarged) > len(basis):
            basis = enlarged
            chosen_weights.append((w & mask).bit_count())
        if len(basis) == k:
            break
    multiplicity = Counter(chosen_weights)
    weights = sorted({(w & mask).bit_count() for w in words})
    parts = [
        f"{d}_{multiplicity[d]}" if multiplicity.get(d) else str(d) for d in weights
    ]
    return f"[{mu},{k},{{{','.join(parts)}}}]"


def _entry(mu: int, basis: tuple[int, ...]) -> TableEntry:
    code = _as_code(mu, basis)
    return TableEntry(
        code=code,
        dim=code.dim,
        profile=_greedy_profile(code),
        enumerator=weight_enumerator(code),
        canonical=canonical_form(code),
    )


def classify_quartic_codes(
    mu: int, *, audit: bool = False, griesmer_prune: bool = True
) -> ClassificationTable:
    """All nonzero even-set codes a mu-nodal quartic can carry, up to node
    permutation.

    For mu <= 5 no admissible word fits and the table is empty.  With
    ``audit=True`` the codes excluded only by the dimension lower bounds
    are reported alongside.
    """
    if not 1 <= mu <= MU_MAX:
        raise DomainError(f"mu must lie in 1..{MU_MAX}, got {mu}")
    passing = []
    excluded = []
    for basis in _enumerate_admissible(mu, griesmer_prune):
        entry = _entry(mu, basis)
        strict_dim = entry.code.strict_dim()
        if entry.dim >= max(1, mu - 10) and strict_dim >= mu - 11:
            passing.append(entry)
        elif audit:
            excluded.append(entry)
    def order(e: TableEntry):
        return (e.dim, e.canonical)

    return ClassificationTable(
        mu=mu,
        entries=tuple(sorted(passing, key=order)),
        excluded=tuple(sorted(excluded, key=order)),
    )


def render_table(table: ClassificationTable, audit: bool = False) -> str:
    """Human-readable listing, one line per code class."""
    lines = [f"mu = {table.mu}: {len(table.entries)} code(s)"]
    for e in table.entries:
        weights = ", ".join(
            f"{c} x {par}-{w}" for (w, par), c in sorted(e.enumerator.items())
        )
        lines.append(f"  {e.profile}   dim {e.dim}   words: {weights}")
        for g in e.code.generators:
            lines.append(f"      {g}")
    if audit and table.excluded:
        lines.append(f"  excluded by dimension bounds ({len(table.excluded)}):")
        for e in table.excluded:
            lines.append(f"    {e.profile}")
    return "\n".join(lines)
