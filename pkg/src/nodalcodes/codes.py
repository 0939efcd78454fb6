"""Even sets of nodes as a parity-augmented binary code.

An even set of nodes is a word over the node positions tagged strictly or
weakly even.  Parity behaves linearly (weak + weak = strict, strict +
weak = weak), so a word is modeled as a (1+mu)-bit vector whose extra
coordinate is the parity bit; the strictly even words are then exactly a
hyperplane subcode.

Internally words are plain ints: bits 0..mu-1 carry the support, bit mu
the parity (set = weakly even).  The canonical form minimizes the
column-wise reduced generator matrix over all permutations of the support
columns (the parity column stays put), so two codes get equal canonical
bytes iff one is a node relabeling of the other.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DataError, DomainError, ResourceError
from .linalg import bit_rref

_MU_CAP_CANONICAL = 24
_DIM_CAP_ENUMERATION = 20

WEAK = "weak"
STRICT = "strict"


@dataclass(frozen=True)
class EvenSetWord:
    """A parity-tagged subset of the mu node positions."""

    mu: int
    weak: bool
    support: int

    def __post_init__(self):
        if self.mu < 0:
            raise DataError("negative length")
        if self.support < 0 or self.support >> self.mu:
            raise DataError("support has bits outside the node range")
        if self.support == 0 and self.weak:
            raise DataError("the zero word is strictly even by convention")

    @classmethod
    def from_indices(cls, mu: int, parity: str, indices: Iterable[int]) -> "EvenSetWord":
        if parity not in (WEAK, STRICT):
            raise DataError(f"parity must be 'weak' or 'strict', got {parity!r}")
        support = 0
        for i in indices:
            if not 0 <= i < mu:
                raise DataError(f"node index {i} outside 0..{mu - 1}")
            support |= 1 << i
        return cls(mu, parity == WEAK, support)

    @property
    def weight(self) -> int:
        return self.support.bit_count()

    @property
    def parity(self) -> str:
        return WEAK if self.weak else STRICT

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.mu) if (self.support >> i) & 1)

    def to_ext(self) -> int:
        """Parity-augmented integer encoding (bit mu = parity)."""
        return self.support | (int(self.weak) << self.mu)

    @classmethod
    def from_ext(cls, mu: int, ext: int) -> "EvenSetWord":
        return cls(mu, bool((ext >> mu) & 1), ext & ((1 << mu) - 1))

    def __add__(self, other: "EvenSetWord") -> "EvenSetWord":
        return word_sum(self, other)

    def __str__(self) -> str:
        return f"{self.parity}{{{','.join(map(str, self.indices))}}}"


def word_sum(u: EvenSetWord, v: EvenSetWord) -> EvenSetWord:
    """Symmetric difference of supports; parities add mod 2."""
    if u.mu != v.mu:
        raise DataError(f"length mismatch: {u.mu} != {v.mu}")
    return EvenSetWord.from_ext(u.mu, u.to_ext() ^ v.to_ext())


def quartic_admissible(w: EvenSetWord) -> bool:
    """Whether a nonzero even set can occur on a nodal quartic surface:
    weakly even sets have 6 or 10 nodes, strictly even ones 8 or 16."""
    if w.support == 0:
        raise DomainError("admissibility is defined for nonzero words only")
    if w.weak:
        return w.weight in (6, 10)
    return w.weight in (8, 16)


def griesmer_ok(n: int, k: int, d: int) -> bool:
    """Griesmer bound test for a binary [n, k, d] code."""
    if k < 1:
        raise DomainError(f"dimension must be at least 1, got {k}")
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got d={d}, n={n}")
    return n >= sum(-(-d // (1 << i)) for i in range(k))


@dataclass(frozen=True)
class EvenSetCode:
    """F2-span of even-set words; stored generators are an independent basis."""

    mu: int
    generators: tuple[EvenSetWord, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.mu != self.mu:
                raise DataError("generator length disagrees with the code length")
        basis = bit_rref([g.to_ext() for g in self.generators])
        if 1 << self.mu in basis:
            # two words with equal support but opposite parity: the empty
            # weakly even set would be in the span
            raise DataError("parity is not a linear functional of the support")
        object.__setattr__(
            self, "generators", tuple(EvenSetWord.from_ext(self.mu, v) for v in basis)
        )

    @classmethod
    def from_words(cls, mu: int, words: Iterable[EvenSetWord]) -> "EvenSetCode":
        return cls(mu, tuple(words))

    @property
    def dim(self) -> int:
        return len(self.generators)

    def basis_ext(self) -> list[int]:
        return [g.to_ext() for g in self.generators]

    def words_ext(self) -> list[int]:
        """All 2^dim words in extended encoding, zero included."""
        if self.dim > _DIM_CAP_ENUMERATION:
            raise ResourceError(
                f"refusing to enumerate 2^{self.dim} words (cap {_DIM_CAP_ENUMERATION})"
            )
        words = [0]
        for g in self.basis_ext():
            words += [w ^ g for w in words]
        return words

    def words(self) -> Iterator[EvenSetWord]:
        """All nonzero words of the code."""
        for ext in self.words_ext():
            if ext:
                yield EvenSetWord.from_ext(self.mu, ext)

    def contains(self, w: EvenSetWord) -> bool:
        if w.mu != self.mu:
            raise DataError(f"length mismatch: {w.mu} != {self.mu}")
        residual = bit_rref(self.basis_ext() + [w.to_ext()])
        return len(residual) == self.dim

    def strict_dim(self) -> int:
        """Dimension of the strictly even subcode (index at most 2)."""
        if any(g.weak for g in self.generators):
            return self.dim - 1
        return self.dim


def weight_enumerator(code: EvenSetCode) -> dict[tuple[int, str], int]:
    """Counts of nonzero words keyed by (weight, parity)."""
    counts: dict[tuple[int, str], int] = {}
    mask = (1 << code.mu) - 1
    for ext in code.words_ext():
        if ext == 0:
            continue
        key = ((ext & mask).bit_count(), WEAK if (ext >> code.mu) & 1 else STRICT)
        counts[key] = counts.get(key, 0) + 1
    return counts


# --- canonical form ----------------------------------------------------------
#
# The encoding of a code under a support-column order is the sequence of
# columns of the unique RREF of its generator matrix, parity column first,
# each column read as a k-bit integer (first pivot row = most significant
# bit).  The canonical encoding is the minimum over all column orders.
#
# The search processes one column at a time.  A state is summarized by the
# multiset of remaining column fingerprints (entries over the current
# reduced rows), which determines the optimal completion, so completions
# are memoized globally across codes.  Only columns achieving the minimal
# next value can start an optimal completion, which keeps the tie tree
# narrow even for very symmetric codes.

_search_memo: dict[tuple, tuple] = {}


def _freeze_free(rows: list[int], npiv: int) -> list[int]:
    # canonical basis for the not-yet-pivoted rows, so equal states collide
    return rows[:npiv] + bit_rref(rows[npiv:])


def _fingerprint(rows: list[int], k: int, col: int) -> int:
    fp = 0
    for i, r in enumerate(rows):
        if (r >> col) & 1:
            fp |= 1 << (k - 1 - i)
    return fp


def _column_step(rows: list[int], npiv: int, k: int, col: int):
    piv_idx = None
    for i in range(npiv, k):
        if (rows[i] >> col) & 1:
            piv_idx = i
            break
    if piv_idx is None:
        val = 0
        for i in range(npiv):
            if (rows[i] >> col) & 1:
                val |= 1 << (k - 1 - i)
        return val, rows, npiv
    new = list(rows)
    new[piv_idx], new[npiv] = new[npiv], new[piv_idx]
    piv = new[npiv]
    for i in range(k):
        if i != npiv and (new[i] >> col) & 1:
            new[i] ^= piv
    return 1 << (k - 1 - npiv), _freeze_free(new, npiv + 1), npiv + 1


def _min_completion(rows: list[int], npiv: int, remaining: list[int], k: int) -> tuple:
    if not remaining:
        return ()
    key = (k, npiv, tuple(sorted(_fingerprint(rows, k, c) for c in remaining)))
    hit = _search_memo.get(key)
    if hit is not None:
        return hit
    group_reps: dict[int, int] = {}
    for c in remaining:
        fp = _fingerprint(rows, k, c)
        if fp not in group_reps:
            group_reps[fp] = c
    free_mask = (1 << (k - npiv)) - 1
    candidates = []
    for fp, rep in group_reps.items():
        val = (1 << (k - 1 - npiv)) if fp & free_mask else fp
        candidates.append((val, rep))
    min_val = min(v for v, _ in candidates)
    best = None
    for val, rep in candidates:
        if val != min_val:
            continue
        _, rows2, npiv2 = _column_step(rows, npiv, k, rep)
        tail = _min_completion(rows2, npiv2, [c for c in remaining if c != rep], k)
        full = (min_val,) + tail
        if best is None or full < best:
            best = full
    _search_memo[key] = best
    return best


def canonical_encoding(code: EvenSetCode) -> tuple[int, ...]:
    """Canonical column-minimized RREF encoding as a tuple of integers."""
    mu = code.mu
    if mu > _MU_CAP_CANONICAL:
        raise ResourceError(f"canonical form is capped at mu = {_MU_CAP_CANONICAL}")
    basis = code.basis_ext()
    k = len(basis)
    if k == 0:
        return (mu, 0)
    parity_val, rows, npiv = _column_step(_freeze_free(basis, 0), 0, k, mu)
    tail = _min_completion(rows, npiv, list(range(mu)), k)
    return (mu, k, parity_val) + tail


def canonical_form(code: EvenSetCode) -> bytes:
    """Permutation-invariant fingerprint; equal bytes iff codes are
    equivalent up to a permutation of node positions."""
    enc = canonical_encoding(code)
    return struct.pack(f">{len(enc)}I", *enc)


def is_isomorphic(a: EvenSetCode, b: EvenSetCode) -> bool:
    """Whether some node relabeling carries one code onto the other."""
    if a.mu != b.mu:
        raise DataError(f"length mismatch: {a.mu} != {b.mu}")
    return canonical_form(a) == canonical_form(b)


def apply_node_permutation(word_ext: int, perm: tuple[int, ...], mu: int) -> int:
    """Permute support bits of an extended word; the parity bit stays."""
    out = word_ext & (1 << mu)
    rest = word_ext & ((1 << mu) - 1)
    while rest:
        low = rest & -rest
        out |= 1 << perm[low.bit_length() - 1]
        rest ^= low
    return out


def column_transpositions(code: EvenSetCode) -> list[tuple[int, ...]]:
    """Automorphisms swapping node positions that look identical to every
    codeword; a cheap (possibly partial) generating set used for orbit
    pruning during classification."""
    mu = code.mu
    basis = code.basis_ext()
    k = len(basis)
    groups: dict[int, list[int]] = {}
    for c in range(mu):
        groups.setdefault(_fingerprint(basis, k, c), []).append(c)
    identity = tuple(range(mu))
    perms = []
    for cols in groups.values():
        for c in cols[1:]:
            p = list(identity)
            p[cols[0]], p[c] = p[c], p[cols[0]]
            perms.append(tuple(p))
    return perms


# --- code file format ---------------------------------------------------------
#
# { "mu": <int>, "generators": [ {"parity": "weak"|"strict",
#                                 "support": [indices]} ] }


def code_from_dict(data: dict) -> EvenSetCode:
    try:
        mu = data["mu"]
        gens = data["generators"]
    except (KeyError, TypeError) as exc:
        raise DataError(f"code file is missing {exc}") from exc
    if not isinstance(mu, int) or mu < 0:
        raise DataError("mu must be a non-negative integer")
    words = []
    for g in gens:
        try:
            words.append(EvenSetWord.from_indices(mu, g["parity"], g["support"]))
        except (KeyError, TypeError) as exc:
            raise DataError(f"bad generator entry {g!r}") from exc
    return EvenSetCode.from_words(mu, words)


def code_to_dict(code: EvenSetCode) -> dict:
    return {
        "mu": code.mu,
        "generators": [
            {"parity": g.parity, "support": list(g.indices)} for g in code.generators
        ],
    }


def load_code_file(path: str) -> EvenSetCode:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read code file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"code file is not valid JSON: {exc}") from exc
    return code_from_dict(data)
