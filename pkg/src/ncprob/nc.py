"""Non-crossing partitions of {1..n}.

Enumeration, the partial orders (reverse refinement, the min/max-capture
order and the interval refinement order), Kreweras complementation, Moebius
values, block nesting and the cut/attach/cyclic-merge surgeries.

All values are immutable after construction and every operation is a pure
function, so everything here can be shared freely between threads.  The
enumeration caches are populated behind ``functools.lru_cache``.

Degenerate case: on a one-point ground set the discrete and the one-block
partition coincide, and all order predicates hold reflexively.
"""

import itertools
import re
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import (
    InvalidPartition,
    IsBlockMax,
    LimitExceeded,
    NotComparable,
    NotInner,
    NotLLOne,
    SizeMismatch,
)

DEFAULT_ENUM_LIMIT = 12
ORACLE_LIMIT = 8

Blocks = tuple[tuple[int, ...], ...]


def catalan(m: int) -> int:
    """The m-th Catalan number, with catalan(0) == 1."""
    return comb(2 * m, m) // (m + 1)


class BlockRole(Enum):
    INNER = "inner"
    OUTER = "outer"


def _check_noncrossing_scan(n: int, owner: list[int]) -> bool:
    """Linear-time stack test; ``owner[x]`` is the block id of element x (1-based)."""
    first = {}
    last = {}
    for x in range(1, n + 1):
        b = owner[x]
        if b not in first:
            first[b] = x
        last[b] = x
    stack: list[int] = []
    for x in range(1, n + 1):
        b = owner[x]
        if stack and stack[-1] == b:
            pass
        elif first[b] == x:
            stack.append(b)
        else:
            return False
        if last[b] == x:
            stack.pop()
    return True


class NcPartition:
    """A canonical non-crossing set partition of {1..n}.

    Blocks are stored with elements ascending and blocks ordered by their
    minimum, which makes equality, hashing and the serialized forms
    unambiguous.
    """

    __slots__ = ("n", "blocks", "_owner")

    def __init__(self, n: int, blocks) -> None:
        if n < 1:
            raise InvalidPartition(f"ground-set size must be positive, got {n}")
        canon = tuple(sorted(tuple(sorted(b)) for b in blocks))
        seen: list[int] = []
        for b in canon:
            if not b:
                raise InvalidPartition("empty block")
            seen.extend(b)
        if sorted(seen) != list(range(1, n + 1)):
            raise InvalidPartition(f"blocks do not partition 1..{n}: {canon}")
        owner = [-1] * (n + 1)
        for i, b in enumerate(canon):
            for x in b:
                owner[x] = i
        if not _check_noncrossing_scan(n, owner):
            raise InvalidPartition(f"partition is crossing: {canon}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", canon)
        object.__setattr__(self, "_owner", tuple(owner))

    def __setattr__(self, name, value):
        raise AttributeError("NcPartition is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, NcPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __lt__(self, other):
        return self.blocks < other.blocks

    def __len__(self):
        return len(self.blocks)

    def __repr__(self):
        return f"NcPartition({self.n}, {list(map(list, self.blocks))})"

    def __str__(self):
        return self.to_text()

    def block_of(self, x: int) -> int:
        """Index of the block containing element x."""
        if not 1 <= x <= self.n:
            raise InvalidPartition(f"element {x} outside 1..{self.n}")
        return self._owner[x]

    def to_text(self) -> str:
        """Canonical text form, e.g. ``{1,5,6}{2,4}{3}``."""
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, data, n: int | None = None) -> "NcPartition":
        blocks = [tuple(b) for b in data]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, blocks)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "NcPartition":
        parts = re.findall(r"\{([^{}]*)\}", text)
        if not parts or "".join(parts).strip() == "":
            raise InvalidPartition(f"cannot parse partition text: {text!r}")
        blocks = [tuple(int(tok) for tok in p.split(",")) for p in parts]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, blocks)


def zero_partition(n: int) -> NcPartition:
    """0_n, the partition into singletons."""
    return NcPartition(n, [(i,) for i in range(1, n + 1)])


def one_partition(n: int) -> NcPartition:
    """1_n, the one-block partition."""
    return NcPartition(n, [tuple(range(1, n + 1))])


def is_noncrossing(blocks, n: int | None = None) -> bool:
    """Crossing test for a raw set partition of {1..n}.

    Raises InvalidPartition when the blocks do not partition the ground set;
    returns False when they do but cross.
    """
    blocks = [tuple(sorted(b)) for b in blocks]
    elems = sorted(x for b in blocks for x in b)
    if n is None:
        n = len(elems)
    if elems != list(range(1, n + 1)):
        raise InvalidPartition(f"blocks do not partition 1..{n}")
    owner = [-1] * (n + 1)
    for i, b in enumerate(blocks):
        for x in b:
            owner[x] = i
    return _check_noncrossing_scan(n, owner)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _nc_range(m: int) -> tuple[Blocks, ...]:
    """All non-crossing partitions of {0..m-1}, 0-based, sorted canonically.

    Recursive construction by the block of the minimum element: that block is
    an arbitrary subset containing 0, and the leftover elements fall into
    independent contiguous gaps between its members.
    """
    if m == 0:
        return ((),)
    out: list[Blocks] = []
    rest = m - 1
    for mask in range(1 << rest):
        block = [0]
        for i in range(rest):
            if mask >> i & 1:
                block.append(i + 1)
        segs = [(a + 1, b) for a, b in zip(block, block[1:])]
        segs.append((block[-1] + 1, m))
        per_seg = []
        for a, b in segs:
            shifted = []
            for q in _nc_range(b - a):
                shifted.append(tuple(tuple(x + a for x in blk) for blk in q))
            per_seg.append(shifted)
        base = (tuple(block),)
        for combo in itertools.product(*per_seg):
            blocks = base
            for q in combo:
                blocks += q
            out.append(tuple(sorted(blocks)))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _nc_objects(n: int) -> tuple[NcPartition, ...]:
    return tuple(
        NcPartition(n, [tuple(x + 1 for x in b) for b in blocks])
        for blocks in _nc_range(n)
    )


def enumerate_nc(n: int, limit: int | None = None) -> tuple[NcPartition, ...]:
    """All of NC(n) in lexicographic order on the canonical form."""
    limit = DEFAULT_ENUM_LIMIT if limit is None else limit
    if n < 1:
        raise InvalidPartition(f"n must be positive, got {n}")
    if n > limit:
        raise LimitExceeded(f"n={n} above enumeration limit {limit}")
    return _nc_objects(n)


def interval_partitions(n: int, limit: int | None = None) -> tuple[NcPartition, ...]:
    """All interval partitions of {1..n} (one per composition of n)."""
    limit = DEFAULT_ENUM_LIMIT if limit is None else limit
    if n < 1:
        raise InvalidPartition(f"n must be positive, got {n}")
    if n > limit:
        raise LimitExceeded(f"n={n} above enumeration limit {limit}")
    out = []
    for mask in range(1 << (n - 1)):
        blocks = []
        cur = [1]
        for x in range(2, n + 1):
            if mask >> (x - 2) & 1:
                blocks.append(tuple(cur))
                cur = [x]
            else:
                cur.append(x)
        blocks.append(tuple(cur))
        out.append(NcPartition(n, blocks))
    return tuple(sorted(out, key=lambda p: p.blocks))


def is_interval(pi: NcPartition) -> bool:
    """True iff every block is a set of consecutive integers."""
    return all(b[-1] - b[0] + 1 == len(b) for b in pi.blocks)


# ---------------------------------------------------------------------------
# Partial orders
# ---------------------------------------------------------------------------

def _require_same_n(pi: NcPartition, rho: NcPartition) -> None:
    if pi.n != rho.n:
        raise SizeMismatch(f"ground sets differ: {pi.n} vs {rho.n}")


def leq(pi: NcPartition, rho: NcPartition) -> bool:
    """Reverse refinement: every block of rho is a union of blocks of pi."""
    _require_same_n(pi, rho)
    owner = rho._owner
    for b in pi.blocks:
        r = owner[b[0]]
        for x in b[1:]:
            if owner[x] != r:
                return False
    return True


def ll(pi: NcPartition, rho: NcPartition) -> bool:
    """pi << rho: pi <= rho and each block of rho has its min and max inside
    one block of pi."""
    _require_same_n(pi, rho)
    if not leq(pi, rho):
        return False
    owner = pi._owner
    return all(owner[b[0]] == owner[b[-1]] for b in rho.blocks)


def sqsubseteq(pi: NcPartition, rho: NcPartition) -> bool:
    """Interval refinement: pi <= rho and pi induces an interval partition on
    every block of rho (with respect to the order induced on that block)."""
    _require_same_n(pi, rho)
    if not leq(pi, rho):
        return False
    owner = pi._owner
    for b in rho.blocks:
        prev = None
        seen = set()
        for x in b:
            cur = owner[x]
            if cur != prev:
                if cur in seen:
                    return False
                seen.add(cur)
            prev = cur
    return True


def ll_one(pi: NcPartition) -> bool:
    """pi << 1_n, i.e. pi has a unique outer block containing both 1 and n."""
    return pi._owner[1] == pi._owner[pi.n]


def enumerate_ll_below(rho: NcPartition) -> tuple[NcPartition, ...]:
    """All pi with pi << rho."""
    return tuple(p for p in enumerate_nc(rho.n) if ll(p, rho))


# ---------------------------------------------------------------------------
# Kreweras complementation and Moebius values
# ---------------------------------------------------------------------------

def _kreweras_blocks0(blocks: Blocks, n: int) -> Blocks:
    """Kreweras complement on 0-based blocks, via the cycle construction.

    Each block, traversed increasingly, is a cycle of a permutation p; the
    complement is the cycle structure of i -> p^{-1}(i+1 mod n).  This is the
    direct equivalent of the maximal interleaving partition.
    """
    pinv = list(range(n))
    for b in blocks:
        for a, c in zip(b, b[1:]):
            pinv[c] = a
        pinv[b[0]] = b[-1]
    out = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = pinv[(x + 1) % n]
        out.append(tuple(sorted(cyc)))
    return tuple(sorted(out))


def kreweras(pi: NcPartition) -> NcPartition:
    """The Kreweras complement K_n(pi).

    K_n(pi) is the largest sigma, in reverse refinement, for which placing pi
    on the odd points and sigma on the even points of {1..2n} stays
    non-crossing.
    """
    blocks0 = tuple(tuple(x - 1 for x in b) for b in pi.blocks)
    comp = _kreweras_blocks0(blocks0, pi.n)
    return NcPartition(pi.n, [tuple(x + 1 for x in b) for b in comp])


def _moebius_int(blocks: Blocks, n: int) -> int:
    comp = _kreweras_blocks0(blocks, n)
    sign = -1 if (len(blocks) - 1) % 2 else 1
    prod = 1
    for b in comp:
        prod *= catalan(len(b) - 1)
    return sign * prod


def moebius_to_one(pi: NcPartition) -> Fraction:
    """Moeb_n(pi, 1_n) as a signed product of Catalan numbers over the
    Kreweras complement."""
    blocks0 = tuple(tuple(x - 1 for x in b) for b in pi.blocks)
    return Fraction(_moebius_int(blocks0, pi.n))


@lru_cache(maxsize=32)
def _moebius_column(rho: NcPartition) -> dict[NcPartition, Fraction]:
    """Moeb(tau, rho) for every tau <= rho, by inverting the zeta function:
    process coarsest-first and use sum over tau <= sigma <= rho of
    Moeb(sigma, rho) == [tau == rho]."""
    lower = [t for t in enumerate_nc(rho.n) if leq(t, rho)]
    lower.sort(key=lambda t: len(t.blocks))
    values: dict[NcPartition, Fraction] = {}
    for t in lower:
        if t == rho:
            values[t] = Fraction(1)
        else:
            acc = Fraction(0)
            for s, v in values.items():
                if leq(t, s):
                    acc += v
            values[t] = -acc
    return values


def moebius_oracle(pi: NcPartition, rho: NcPartition, limit: int = ORACLE_LIMIT) -> Fraction:
    """Moebius value on [pi, rho] by recursive zeta inversion.

    Test oracle only: enumerates everything below rho, so it is restricted
    to small n.
    """
    _require_same_n(pi, rho)
    if pi.n > limit:
        raise LimitExceeded(f"oracle limited to n <= {limit}")
    if not leq(pi, rho):
        raise NotComparable(f"{pi} is not <= {rho}")
    return _moebius_column(rho)[pi]


# ---------------------------------------------------------------------------
# Block nesting
# ---------------------------------------------------------------------------

def _nests(outer: tuple[int, ...], inner: tuple[int, ...]) -> bool:
    return outer[0] < inner[0] and inner[-1] < outer[-1]


def block_roles(pi: NcPartition) -> dict[int, BlockRole]:
    """Role of each block: INNER when some block nests it, OUTER otherwise."""
    roles = {}
    for i, b in enumerate(pi.blocks):
        inner = any(_nests(w, b) for j, w in enumerate(pi.blocks) if j != i)
        roles[i] = BlockRole.INNER if inner else BlockRole.OUTER
    return roles


def outer_blocks(pi: NcPartition) -> tuple[int, ...]:
    """Indices of the outer blocks."""
    roles = block_roles(pi)
    return tuple(i for i in range(len(pi.blocks)) if roles[i] is BlockRole.OUTER)


def parent_block(pi: NcPartition, block_index: int) -> int:
    """Index of the parent-block: the minimal block nesting the given one."""
    b = pi.blocks[block_index]
    nesting = [
        (w[0], j)
        for j, w in enumerate(pi.blocks)
        if j != block_index and _nests(w, b)
    ]
    if not nesting:
        raise NotInner(f"block {b} is outer in {pi}")
    # nesting blocks form a chain; the parent is the one opening latest
    return max(nesting)[1]


# ---------------------------------------------------------------------------
# Cut / attach surgeries
# ---------------------------------------------------------------------------

def cut(pi: NcPartition, i: int) -> NcPartition:
    """Split the inner block containing i into its parts up to i and after i."""
    idx = pi.block_of(i)
    if block_roles(pi)[idx] is not BlockRole.INNER:
        raise NotInner(f"{i} lies in an outer block of {pi}")
    p = pi.blocks[idx]
    if i == p[-1]:
        raise IsBlockMax(f"{i} is the maximum of its block {p}")
    low = tuple(j for j in p if j <= i)
    high = tuple(j for j in p if j > i)
    blocks = [b for j, b in enumerate(pi.blocks) if j != idx] + [low, high]
    return NcPartition(pi.n, blocks)


def attach(pi: NcPartition, i: int) -> NcPartition:
    """Merge the inner block containing i into its parent-block."""
    idx = pi.block_of(i)
    if block_roles(pi)[idx] is not BlockRole.INNER:
        raise NotInner(f"{i} lies in an outer block of {pi}")
    ridx = parent_block(pi, idx)
    merged = tuple(sorted(pi.blocks[idx] + pi.blocks[ridx]))
    blocks = [b for j, b in enumerate(pi.blocks) if j not in (idx, ridx)] + [merged]
    return NcPartition(pi.n, blocks)


# ---------------------------------------------------------------------------
# The cyclic translate-and-merge bijection {rho << 1_{n+1}} -> NC(n)
# ---------------------------------------------------------------------------

def f_nm(rho: NcPartition, m: int) -> NcPartition:
    """Forward cyclic translation by m followed by merging m with m+1.

    Sends a partition of {1..n+1} with unique outer block containing 1 and
    n+1 to a partition of {1..n}; a bijection, inverted by f_nm_inverse.
    """
    n = rho.n - 1
    if n < 1 or not 1 <= m <= n:
        raise InvalidPartition(f"m={m} outside 1..{n}")
    if not ll_one(rho):
        raise NotLLOne(f"{rho} is not << 1_{rho.n}")
    size = rho.n
    tau = lambda k: (m + k - 1) % size + 1
    hat = [tuple(sorted(tau(k) for k in b)) for b in rho.blocks]
    # m and m+1 are now in one block; drop m+1 and close the gap
    blocks = []
    for b in hat:
        nb = [x - 1 if x > m + 1 else x for x in b if x != m + 1]
        blocks.append(tuple(sorted(nb)))
    return NcPartition(n, blocks)


def f_nm_inverse(pi: NcPartition, m: int) -> NcPartition:
    """Inverse of f_nm: reopen the merged point and translate back."""
    n = pi.n
    if not 1 <= m <= n:
        raise InvalidPartition(f"m={m} outside 1..{n}")
    size = n + 1
    hat = []
    for b in pi.blocks:
        nb = [x + 1 if x > m else x for x in b]
        if m in b:
            nb.append(m + 1)
        hat.append(tuple(sorted(nb)))
    tau_inv = lambda k: (k - m - 1) % size + 1
    blocks = [tuple(sorted(tau_inv(k) for k in b)) for b in hat]
    rho = NcPartition(size, blocks)
    if not ll_one(rho):
        raise NotLLOne(f"inverse image {rho} is not << 1_{size}")
    return rho
