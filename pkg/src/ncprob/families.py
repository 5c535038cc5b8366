"""Truncated families of multilinear functionals with exact rational values.

A family of degree N over k generators stores one rational per word of
length 1..N with letters in {1..k}.  Moment families, every brand of
cumulants and the derivative-style functionals all share this one
representation; the `kind` tag records which role a table plays and fixes
the implied degree-0 normalization (1 for moment-like kinds, 0 for the
infinitesimal ones).

Degree bookkeeping matters throughout the package: a family of degree N
answers only words of length <= N, and the one degree-consuming operation
(the cyclic one-slot comultiplication in `deltastar`) turns degree N+1
input into degree N output.  Nothing is ever zero-padded.
"""

import itertools
import random as _random
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DegreeTooLow,
    DimMismatch,
    EmptySubset,
    PositionOutOfRange,
    ShapeMismatch,
)

Word = tuple[int, ...]

KINDS = (
    "moment",
    "free-cumulant",
    "boolean-cumulant",
    "cfree-cumulant",
    "cc-cumulant",
    "infinitesimal",
    "infinitesimal-cumulant",
)
_UNIT_ZERO_KINDS = ("infinitesimal", "infinitesimal-cumulant")


@lru_cache(maxsize=None)
def words_of_length(k: int, n: int) -> tuple[Word, ...]:
    return tuple(itertools.product(range(1, k + 1), repeat=n))


def all_words(k: int, max_n: int):
    """Every word of length 1..max_n over {1..k}, shortest first."""
    for n in range(1, max_n + 1):
        yield from words_of_length(k, n)


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    return str(q)


class MultilinearFamily:
    """Word-indexed table of exact rationals; immutable once built."""

    __slots__ = ("k", "N", "kind", "unit", "_values", "_hash")

    def __init__(self, k: int, N: int, values, kind: str = "moment") -> None:
        if k < 1 or N < 1:
            raise ShapeMismatch(f"k and N must be positive, got k={k}, N={N}")
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        table: dict[Word, Fraction] = {}
        for w in all_words(k, N):
            try:
                v = values[w]
            except KeyError:
                raise ShapeMismatch(f"missing value for word {w}") from None
            table[w] = v if isinstance(v, Fraction) else Fraction(v)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "unit", "zero" if kind in _UNIT_ZERO_KINDS else "one")
        object.__setattr__(self, "_values", table)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultilinearFamily is immutable")

    def __call__(self, word) -> Fraction:
        w = tuple(word)
        if len(w) > self.N:
            raise DegreeTooLow(
                f"word of length {len(w)} beyond truncation degree {self.N}"
            )
        try:
            return self._values[w]
        except KeyError:
            raise PositionOutOfRange(f"letters of {w} outside 1..{self.k}") from None

    @property
    def values(self) -> dict[Word, Fraction]:
        return dict(self._values)

    def __eq__(self, other):
        return (
            isinstance(other, MultilinearFamily)
            and self.k == other.k
            and self.N == other.N
            and self._values == other._values
        )

    def __hash__(self):
        if self._hash is None:
            h = hash((self.k, self.N, tuple(sorted(self._values.items()))))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        return f"MultilinearFamily(k={self.k}, N={self.N}, kind={self.kind!r})"

    def to_json_dict(self) -> dict:
        items = sorted(self._values.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {
            "k": self.k,
            "N": self.N,
            "kind": self.kind,
            "unit": self.unit,
            "values": {
                ",".join(map(str, w)): format_rational(v) for w, v in items
            },
        }

    @classmethod
    def from_json_dict(cls, data) -> "MultilinearFamily":
        values = {
            tuple(int(t) for t in key.split(",")): parse_rational(val)
            for key, val in data["values"].items()
        }
        fam = cls(data["k"], data["N"], values, kind=data.get("kind", "moment"))
        if "unit" in data and data["unit"] != fam.unit:
            raise ShapeMismatch(
                f"unit {data['unit']!r} inconsistent with kind {fam.kind!r}"
            )
        return fam


def build_family(k: int, N: int, fn, kind: str = "moment") -> MultilinearFamily:
    """Family whose value on each word is fn(word)."""
    return MultilinearFamily(k, N, {w: fn(w) for w in all_words(k, N)}, kind=kind)


def zero_family(k: int, N: int, kind: str = "infinitesimal") -> MultilinearFamily:
    return build_family(k, N, lambda w: Fraction(0), kind=kind)


def truncate(f: MultilinearFamily, N: int, kind: str | None = None) -> MultilinearFamily:
    """Drop all words longer than N."""
    if N > f.N:
        raise DegreeTooLow(f"cannot extend degree {f.N} family to {N}")
    return MultilinearFamily(
        f.k,
        N,
        {w: f(w) for w in all_words(f.k, N)},
        kind=kind if kind is not None else f.kind,
    )


def restrict(f: MultilinearFamily, word, positions) -> Fraction:
    """Value of f on the subword picked out by a set of 1-based positions,
    always taken in increasing order."""
    w = tuple(word)
    pos = sorted(set(positions))
    if not pos:
        raise EmptySubset("position subset must be non-empty")
    if pos[0] < 1 or pos[-1] > len(w):
        raise PositionOutOfRange(f"positions {pos} outside 1..{len(w)}")
    return f(tuple(w[p - 1] for p in pos))


def is_tracial(f: MultilinearFamily) -> bool:
    """True iff every word's value is invariant under cyclic rotation."""
    for n in range(2, f.N + 1):
        for w in words_of_length(f.k, n):
            if f(w) != f(w[1:] + w[:1]):
                return False
    return True


def _draw(rng: _random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def random_family(k: int, N: int, seed: int, kind: str = "moment") -> MultilinearFamily:
    """Seeded family with small rational entries; deterministic per seed."""
    rng = _random.Random(("family", k, N, seed).__repr__())
    values = {w: _draw(rng) for w in all_words(k, N)}
    return MultilinearFamily(k, N, values, kind=kind)


def random_tracial(k: int, N: int, seed: int, kind: str = "moment") -> MultilinearFamily:
    """Seeded family constant on cyclic classes of words, hence tracial."""
    rng = _random.Random(("tracial", k, N, seed).__repr__())
    classes: dict[Word, Fraction] = {}
    values = {}
    for w in all_words(k, N):
        rep = min(w[i:] + w[:i] for i in range(len(w)))
        if rep not in classes:
            classes[rep] = _draw(rng)
        values[w] = classes[rep]
    return MultilinearFamily(k, N, values, kind=kind)


def relabel(f: MultilinearFamily, offset: int) -> MultilinearFamily:
    """Shift the generators up by `offset`; unshifted letters get value 0."""
    if offset < 0:
        raise ShapeMismatch(f"offset must be >= 0, got {offset}")
    if offset == 0:
        return f
    k2 = f.k + offset

    def fn(w: Word) -> Fraction:
        if all(letter > offset for letter in w):
            return f(tuple(letter - offset for letter in w))
        return Fraction(0)

    return build_family(k2, f.N, fn, kind=f.kind)


class DeltaTensor:
    """A linear map V -> V (x) V on a fixed basis, as a sparse rational
    rank-3 table: entry (i, j, l) is the coefficient of e_j (x) e_l in the
    image of e_i, with j the first tensor factor."""

    __slots__ = ("k", "_entries")

    def __init__(self, k: int, entries) -> None:
        if k < 1:
            raise DimMismatch(f"k must be positive, got {k}")
        table: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, l), v in dict(entries).items():
            if not (1 <= i <= k and 1 <= j <= k and 1 <= l <= k):
                raise DimMismatch(f"index ({i},{j},{l}) outside 1..{k}")
            q = v if isinstance(v, Fraction) else Fraction(v)
            if q != 0:
                table[(i, j, l)] = q
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_entries", table)

    def __setattr__(self, name, value):
        raise AttributeError("DeltaTensor is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, DeltaTensor)
            and self.k == other.k
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.k, tuple(sorted(self._entries.items()))))

    def __repr__(self):
        return f"DeltaTensor(k={self.k}, nnz={len(self._entries)})"

    def expand(self, i: int) -> tuple[tuple[int, int, Fraction], ...]:
        """The nonzero (j, l, coefficient) triples of the image of e_i."""
        return tuple(
            (j, l, v)
            for (ii, j, l), v in sorted(self._entries.items())
            if ii == i
        )

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "entries": [
                {"i": i, "j": j, "l": l, "value": format_rational(v)}
                for (i, j, l), v in sorted(self._entries.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data) -> "DeltaTensor":
        entries = {
            (e["i"], e["j"], e["l"]): parse_rational(e["value"])
            for e in data["entries"]
        }
        return cls(data["k"], entries)


def diagonal_delta(k: int) -> DeltaTensor:
    """The comultiplication e_i -> e_i (x) e_i."""
    return DeltaTensor(k, {(i, i, i): Fraction(1) for i in range(1, k + 1)})


def random_delta(k: int, seed: int) -> DeltaTensor:
    """Seeded dense tensor with small rational entries."""
    rng = _random.Random(("delta", k, seed).__repr__())
    entries = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            for l in range(1, k + 1):
                entries[(i, j, l)] = Fraction(rng.randint(-2, 2), rng.randint(1, 2))
    return DeltaTensor(k, entries)
