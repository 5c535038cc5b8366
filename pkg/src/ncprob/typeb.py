"""Symmetric non-crossing partitions of {+-1..+-n}.

Two circular label orders are supported: type B places the labels as
(1,..,n,-1,..,-n) around the circle, the opposite variant as
(1,..,n,-n,..,-1).  A partition must be non-crossing for the chosen order
and closed under negation; a block equal to its own negation is a
zero-block.
"""

import re
from enum import Enum
from functools import lru_cache
from math import comb

from .errors import InvalidPartition, LimitExceeded, NotOuter
from .nc import NcPartition, enumerate_nc, outer_blocks

DEFAULT_SIGNED_LIMIT = 8

SignedBlocks = tuple[tuple[int, ...], ...]


class Flavor(Enum):
    B = "B"
    B_OPP = "B-opp"


def _position(label: int, n: int, flavor: Flavor) -> int:
    """0-based position of a signed label in the flavor's circular order."""
    if label > 0:
        return label - 1
    if flavor is Flavor.B:
        return n - label - 1          # -i sits at position n+i-1
    return 2 * n + label              # -i sits at position 2n-i


def _block_key(block: tuple[int, ...]):
    m = min(abs(x) for x in block)
    return (m, 0 if m in block else 1)


def _sort_block(block) -> tuple[int, ...]:
    pos = sorted(x for x in block if x > 0)
    neg = sorted((x for x in block if x < 0), key=abs)
    return tuple(pos + neg)


def _crosses(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Linear interleave test on positions: four or more alternating runs."""
    merged = sorted([(x, 0) for x in a] + [(x, 1) for x in b])
    runs = 1
    for i in range(1, len(merged)):
        if merged[i][1] != merged[i - 1][1]:
            runs += 1
    return runs >= 4


class SignedNcPartition:
    """Canonical symmetric non-crossing partition of {+-1..+-n}."""

    __slots__ = ("n", "flavor", "blocks")

    def __init__(self, n: int, flavor: Flavor, blocks) -> None:
        if n < 1:
            raise InvalidPartition(f"n must be positive, got {n}")
        canon = tuple(sorted((_sort_block(b) for b in blocks), key=_block_key))
        elems = sorted(x for b in canon for x in b)
        want = sorted(list(range(-n, 0)) + list(range(1, n + 1)))
        if elems != want:
            raise InvalidPartition(f"blocks do not partition +-1..+-{n}")
        block_sets = [frozenset(b) for b in canon]
        universe = set(block_sets)
        for s in block_sets:
            if frozenset(-x for x in s) not in universe:
                raise InvalidPartition(f"not closed under negation: {sorted(s)}")
        pos_blocks = [
            tuple(sorted(_position(x, n, flavor) for x in b)) for b in canon
        ]
        for i in range(len(pos_blocks)):
            for j in range(i + 1, len(pos_blocks)):
                if _crosses(pos_blocks[i], pos_blocks[j]):
                    raise InvalidPartition(
                        f"crossing blocks in {flavor.value} order: "
                        f"{canon[i]} and {canon[j]}"
                    )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "blocks", canon)

    def __setattr__(self, name, value):
        raise AttributeError("SignedNcPartition is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SignedNcPartition)
            and self.n == other.n
            and self.flavor == other.flavor
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.flavor, self.blocks))

    def __lt__(self, other):
        return self.blocks < other.blocks

    def __repr__(self):
        return f"SignedNcPartition({self.n}, {self.flavor}, {list(map(list, self.blocks))})"

    def __str__(self):
        return self.to_text(tagged=True)

    def to_text(self, tagged: bool = False) -> str:
        body = "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"{self.flavor.value}:{body}" if tagged else body

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "flavor": self.flavor.value,
            "blocks": [list(b) for b in self.blocks],
        }

    @classmethod
    def from_json(cls, data) -> "SignedNcPartition":
        return cls(data["n"], Flavor(data["flavor"]), [tuple(b) for b in data["blocks"]])

    @classmethod
    def from_text(cls, text: str, flavor: Flavor | None = None) -> "SignedNcPartition":
        if ":" in text:
            tag, body = text.split(":", 1)
            flavor = Flavor(tag)
        else:
            body = text
        if flavor is None:
            raise InvalidPartition("flavor tag required")
        parts = re.findall(r"\{([^{}]*)\}", body)
        blocks = [tuple(int(tok) for tok in p.split(",")) for p in parts]
        n = sum(len(b) for b in blocks) // 2
        return cls(n, flavor, blocks)


def zero_blocks(sigma: SignedNcPartition) -> tuple[int, ...]:
    """Indices of the blocks fixed by negation."""
    out = []
    for i, b in enumerate(sigma.blocks):
        if frozenset(b) == frozenset(-x for x in b):
            out.append(i)
    return tuple(out)


def abs_partition(sigma: SignedNcPartition) -> NcPartition:
    """The partition {Abs(U)} of {1..n}; blocks U and -U collapse to one."""
    seen = set()
    blocks = []
    for b in sigma.blocks:
        a = tuple(sorted({abs(x) for x in b}))
        if a not in seen:
            seen.add(a)
            blocks.append(a)
    return NcPartition(sigma.n, blocks)


def from_pair(pi: NcPartition, s) -> SignedNcPartition:
    """Build the opposite-order partition from pi and a set of its outer blocks.

    Blocks in s become zero-blocks W u (-W); every other block contributes
    the pair V, -V.
    """
    chosen = {tuple(sorted(b)) for b in s}
    outer = {pi.blocks[i] for i in outer_blocks(pi)}
    for b in chosen:
        if b not in outer:
            raise NotOuter(f"{b} is not an outer block of {pi}")
    blocks = []
    for b in pi.blocks:
        if b in chosen:
            blocks.append(b + tuple(-x for x in b))
        else:
            blocks.append(b)
            blocks.append(tuple(-x for x in b))
    return SignedNcPartition(pi.n, Flavor.B_OPP, blocks)


def to_pair(sigma: SignedNcPartition) -> tuple[NcPartition, tuple[tuple[int, ...], ...]]:
    """Inverse of from_pair: the absolute-value partition plus the set of
    outer blocks coming from zero-blocks."""
    pi = abs_partition(sigma)
    zs = zero_blocks(sigma)
    s = tuple(
        sorted(tuple(sorted({abs(x) for x in sigma.blocks[i]})) for i in zs)
    )
    return pi, s


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _symmetric_position_partitions(n: int, rotation: bool) -> tuple[SignedBlocks, ...]:
    """Symmetric circular non-crossing partitions of 2n positions.

    The symmetry is the rotation p -> p+n (type B negation) or the reflection
    p -> 2n-1-p (opposite order negation).  Backtracking over the block of
    the least uncovered position; committing a block commits its partner.
    """
    size = 2 * n
    if rotation:
        g = lambda p: (p + n) % size
    else:
        g = lambda p: size - 1 - p
    results: list[SignedBlocks] = []

    def backtrack(uncovered: tuple[int, ...], blocks: tuple[tuple[int, ...], ...]):
        if not uncovered:
            results.append(tuple(sorted(blocks)))
            return
        p = uncovered[0]
        rest = uncovered[1:]
        # positions that can share a block with p without crossing anything
        allowed = [
            q for q in rest if all(not _crosses((p, q), blk) for blk in blocks)
        ]
        unc = set(uncovered)
        for mask in range(1 << len(allowed)):
            block = [p]
            for i in range(len(allowed)):
                if mask >> i & 1:
                    block.append(allowed[i])
            block_t = tuple(block)
            partner = tuple(sorted(g(x) for x in block_t))
            if partner == block_t:
                nxt = tuple(x for x in uncovered if x not in set(block_t))
                backtrack(nxt, blocks + (block_t,))
                continue
            pset = set(partner)
            if pset & set(block_t):
                continue
            if not pset <= unc:
                continue
            if _crosses(block_t, partner):
                continue
            if any(_crosses(partner, blk) for blk in blocks):
                continue
            drop = pset | set(block_t)
            nxt = tuple(x for x in uncovered if x not in drop)
            backtrack(nxt, blocks + (block_t, partner))

    backtrack(tuple(range(size)), ())
    return tuple(sorted(results))


def _label_of_position(p: int, n: int, flavor: Flavor) -> int:
    if p < n:
        return p + 1
    if flavor is Flavor.B:
        return -(p - n + 1)
    return -(2 * n - p)


@lru_cache(maxsize=None)
def _enumerate_b(n: int) -> tuple[SignedNcPartition, ...]:
    out = []
    for blocks in _symmetric_position_partitions(n, rotation=True):
        labeled = [
            tuple(_label_of_position(p, n, Flavor.B) for p in b) for b in blocks
        ]
        out.append(SignedNcPartition(n, Flavor.B, labeled))
    return tuple(sorted(out, key=lambda s: s.blocks))


@lru_cache(maxsize=None)
def _enumerate_bopp(n: int) -> tuple[SignedNcPartition, ...]:
    out = []
    for pi in enumerate_nc(n):
        outer = [pi.blocks[i] for i in outer_blocks(pi)]
        for mask in range(1 << len(outer)):
            s = [outer[i] for i in range(len(outer)) if mask >> i & 1]
            out.append(from_pair(pi, s))
    return tuple(sorted(out, key=lambda s: s.blocks))


def enumerate_signed(
    n: int, flavor: Flavor, limit: int | None = None
) -> tuple[SignedNcPartition, ...]:
    """All symmetric non-crossing partitions for the flavor, canonically
    ordered; both flavors are counted by comb(2n, n)."""
    limit = DEFAULT_SIGNED_LIMIT if limit is None else limit
    if n < 1:
        raise InvalidPartition(f"n must be positive, got {n}")
    if n > limit:
        raise LimitExceeded(f"n={n} above signed enumeration limit {limit}")
    if flavor is Flavor.B:
        return _enumerate_b(n)
    return _enumerate_bopp(n)


def signed_count(n: int) -> int:
    """comb(2n, n), the common cardinality of both lattices."""
    return comb(2 * n, n)
