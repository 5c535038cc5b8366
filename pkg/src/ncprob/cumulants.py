"""Moment/cumulant transforms for all four brands of cumulants.

Every transform is a direct summation over an enumerated partition lattice;
the lattice structure for each word length is computed once and cached as
0-based position blocks.  All arithmetic is exact.

Degree contract: each transform here consumes input degree n to produce
output degree n.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import LimitExceeded, ShapeMismatch
from .families import MultilinearFamily, all_words, build_family
from .nc import _nc_range, catalan
from .typeb import DEFAULT_SIGNED_LIMIT, Flavor, enumerate_signed, zero_blocks

Blocks0 = tuple[tuple[int, ...], ...]


def _require_same_shape(f: MultilinearFamily, g: MultilinearFamily) -> None:
    if f.k != g.k or f.N != g.N:
        raise ShapeMismatch(
            f"families disagree: (k={f.k}, N={f.N}) vs (k={g.k}, N={g.N})"
        )


# ---------------------------------------------------------------------------
# Cached lattice tables, all over 0-based positions
# ---------------------------------------------------------------------------

def _mob_int(blocks: Blocks0, n: int) -> int:
    from .nc import _kreweras_blocks0

    comp = _kreweras_blocks0(blocks, n)
    sign = -1 if (len(blocks) - 1) % 2 else 1
    prod = 1
    for b in comp:
        prod *= catalan(len(b) - 1)
    return sign * prod


@lru_cache(maxsize=None)
def _nc_mob_table(n: int) -> tuple[tuple[int, Blocks0], ...]:
    return tuple((_mob_int(blocks, n), blocks) for blocks in _nc_range(n))


@lru_cache(maxsize=None)
def _interval_table(n: int) -> tuple[Blocks0, ...]:
    out = []
    for mask in range(1 << (n - 1)):
        blocks = []
        cur = [0]
        for x in range(1, n):
            if mask >> (x - 1) & 1:
                blocks.append(tuple(cur))
                cur = [x]
            else:
                cur.append(x)
        blocks.append(tuple(cur))
        out.append(tuple(sorted(blocks)))
    return tuple(sorted(out))


def _roles0(blocks: Blocks0) -> tuple[Blocks0, Blocks0]:
    inner, outer = [], []
    for b in blocks:
        if any(w[0] < b[0] and b[-1] < w[-1] for w in blocks if w != b):
            inner.append(b)
        else:
            outer.append(b)
    return tuple(inner), tuple(outer)


@lru_cache(maxsize=None)
def _roles_table(n: int) -> tuple[tuple[Blocks0, Blocks0], ...]:
    """(inner blocks, outer blocks) for every partition in NC(n)."""
    return tuple(_roles0(blocks) for blocks in _nc_range(n))


@lru_cache(maxsize=None)
def _ll_one_table(n: int) -> tuple[tuple[int, tuple[int, ...], Blocks0], ...]:
    """(Moebius value, unique outer block, other blocks) for pi << 1_n."""
    out = []
    for mob, blocks in _nc_mob_table(n):
        holder = next(b for b in blocks if 0 in b)
        if n - 1 not in holder:
            continue
        others = tuple(b for b in blocks if b != holder)
        out.append((mob, holder, others))
    return tuple(out)


def _pos0(block: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(x - 1 for x in block))


def _abs0(block: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted({abs(x) - 1 for x in block}))


@lru_cache(maxsize=None)
def _bopp_table(n: int) -> tuple[tuple[Blocks0, Blocks0], ...]:
    """Per opposite-order partition: (blocks inside the positives, absolute
    values of the zero-blocks)."""
    out = []
    for sigma in enumerate_signed(n, Flavor.B_OPP):
        zs = set(zero_blocks(sigma))
        pos = tuple(
            _pos0(b)
            for i, b in enumerate(sigma.blocks)
            if i not in zs and all(x > 0 for x in b)
        )
        zero = tuple(_abs0(sigma.blocks[i]) for i in sorted(zs))
        out.append((pos, zero))
    return tuple(out)


def _pair_abs(sigma) -> tuple[tuple[int, ...], ...]:
    zs = set(zero_blocks(sigma))
    seen = set()
    out = []
    for i, b in enumerate(sigma.blocks):
        if i in zs:
            continue
        a = _abs0(b)
        if a not in seen:
            seen.add(a)
            out.append(a)
    return tuple(out)


@lru_cache(maxsize=None)
def _b_zero_table(n: int) -> tuple[tuple[tuple[int, ...], Blocks0], ...]:
    """Type-B partitions with a zero-block: (Abs of the zero-block, Abs of
    each symmetric pair)."""
    out = []
    for sigma in enumerate_signed(n, Flavor.B):
        zs = zero_blocks(sigma)
        if not zs:
            continue
        out.append((_abs0(sigma.blocks[zs[0]]), _pair_abs(sigma)))
    return tuple(out)


@lru_cache(maxsize=None)
def _bopp_zero_table(n: int) -> tuple[tuple[Blocks0, Blocks0], ...]:
    """Opposite-order partitions with at least one zero-block: (Abs of each
    zero-block, Abs of each symmetric pair)."""
    out = []
    for sigma in enumerate_signed(n, Flavor.B_OPP):
        zs = zero_blocks(sigma)
        if not zs:
            continue
        zero = tuple(_abs0(sigma.blocks[i]) for i in zs)
        out.append((zero, _pair_abs(sigma)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Free cumulants
# ---------------------------------------------------------------------------

def free_cumulants(phi: MultilinearFamily) -> MultilinearFamily:
    """Moebius inversion of the moment family over NC(n)."""
    val = phi._values

    def fn(w):
        table = _nc_mob_table(len(w))
        total = Fraction(0)
        for mob, blocks in table:
            term = Fraction(mob)
            for b in blocks:
                term *= val[tuple(w[p] for p in b)]
            total += term
        return total

    return build_family(phi.k, phi.N, fn, kind="free-cumulant")


def moments_from_free(kappa: MultilinearFamily) -> MultilinearFamily:
    """Inverse of free_cumulants: the product sum over NC(n)."""
    val = kappa._values

    def fn(w):
        total = Fraction(0)
        for blocks in _nc_range(len(w)):
            term = Fraction(1)
            for b in blocks:
                term *= val[tuple(w[p] for p in b)]
            total += term
        return total

    return build_family(kappa.k, kappa.N, fn, kind="moment")


# ---------------------------------------------------------------------------
# Boolean cumulants
# ---------------------------------------------------------------------------

def boolean_cumulants(chi: MultilinearFamily) -> MultilinearFamily:
    """Signed sum over the interval partitions."""
    val = chi._values

    def fn(w):
        total = Fraction(0)
        for blocks in _interval_table(len(w)):
            term = Fraction(1 if len(blocks) % 2 else -1)
            for b in blocks:
                term *= val[tuple(w[p] for p in b)]
            total += term
        return total

    return build_family(chi.k, chi.N, fn, kind="boolean-cumulant")


def moments_from_boolean(beta: MultilinearFamily) -> MultilinearFamily:
    """Inverse of boolean_cumulants."""
    val = beta._values

    def fn(w):
        total = Fraction(0)
        for blocks in _interval_table(len(w)):
            term = Fraction(1)
            for b in blocks:
                term *= val[tuple(w[p] for p in b)]
            total += term
        return total

    return build_family(beta.k, beta.N, fn, kind="moment")


# ---------------------------------------------------------------------------
# Infinitesimal cumulants
# ---------------------------------------------------------------------------

def infinitesimal_cumulants(
    phi: MultilinearFamily, phi_prime: MultilinearFamily
) -> MultilinearFamily:
    """One distinguished block carries the derivative family, all others the
    moments, with the usual Moebius weight."""
    _require_same_shape(phi, phi_prime)
    val = phi._values
    dval = phi_prime._values

    def fn(w):
        total = Fraction(0)
        for mob, blocks in _nc_mob_table(len(w)):
            subs = [val[tuple(w[p] for p in b)] for b in blocks]
            dsubs = [dval[tuple(w[p] for p in b)] for b in blocks]
            for o in range(len(blocks)):
                term = Fraction(mob) * dsubs[o]
                for i, s in enumerate(subs):
                    if i != o:
                        term *= s
                total += term
        return total

    return build_family(phi.k, phi.N, fn, kind="infinitesimal-cumulant")


def infinitesimal_moments(
    kappa_phi: MultilinearFamily, kappa_prime: MultilinearFamily
) -> MultilinearFamily:
    """Reconstruct the derivative family from free cumulants of the base and
    the infinitesimal cumulants; inverse of infinitesimal_cumulants."""
    _require_same_shape(kappa_phi, kappa_prime)
    val = kappa_phi._values
    dval = kappa_prime._values

    def fn(w):
        total = Fraction(0)
        for blocks in _nc_range(len(w)):
            subs = [val[tuple(w[p] for p in b)] for b in blocks]
            dsubs = [dval[tuple(w[p] for p in b)] for b in blocks]
            for o in range(len(blocks)):
                term = dsubs[o]
                for i, s in enumerate(subs):
                    if i != o:
                        term *= s
                total += term
        return total

    return build_family(kappa_phi.k, kappa_phi.N, fn, kind="infinitesimal")


# ---------------------------------------------------------------------------
# c-free cumulants
# ---------------------------------------------------------------------------

def cfree_cumulants(
    phi: MultilinearFamily, chi: MultilinearFamily
) -> MultilinearFamily:
    """The recursive solution: inner blocks carry free cumulants of phi,
    outer blocks the c-free cumulants themselves; the one-block partition
    isolates the unknown."""
    _require_same_shape(phi, chi)
    kphi = free_cumulants(phi)._values
    cval = chi._values
    out: dict = {}
    for w in all_words(phi.k, phi.N):
        total = cval[w]
        for inner, outer in _roles_table(len(w)):
            if len(inner) + len(outer) == 1:
                continue
            term = Fraction(1)
            for b in inner:
                term *= kphi[tuple(w[p] for p in b)]
            for b in outer:
                term *= out[tuple(w[p] for p in b)]
            total -= term
        out[w] = total
    return MultilinearFamily(phi.k, phi.N, out, kind="cfree-cumulant")


def moments_from_cfree(
    phi: MultilinearFamily, kappa_c: MultilinearFamily
) -> MultilinearFamily:
    """Forward inner/outer product sum, with free cumulants of phi inside."""
    _require_same_shape(phi, kappa_c)
    kphi = free_cumulants(phi)._values
    cval = kappa_c._values

    def fn(w):
        total = Fraction(0)
        for inner, outer in _roles_table(len(w)):
            term = Fraction(1)
            for b in inner:
                term *= kphi[tuple(w[p] for p in b)]
            for b in outer:
                term *= cval[tuple(w[p] for p in b)]
            total += term
        return total

    return build_family(phi.k, phi.N, fn, kind="moment")


def cfree_explicit(
    phi: MultilinearFamily, chi: MultilinearFamily
) -> MultilinearFamily:
    """Non-recursive c-free cumulants: a Moebius-weighted sum over the
    partitions with unique outer block, Boolean cumulants of chi on that
    block and moments of phi elsewhere."""
    _require_same_shape(phi, chi)
    bchi = boolean_cumulants(chi)._values
    val = phi._values

    def fn(w):
        total = Fraction(0)
        for mob, holder, others in _ll_one_table(len(w)):
            term = Fraction(mob) * bchi[tuple(w[p] for p in holder)]
            for b in others:
                term *= val[tuple(w[p] for p in b)]
            total += term
        return total

    return build_family(phi.k, phi.N, fn, kind="cfree-cumulant")


# ---------------------------------------------------------------------------
# Alternative c-free cumulants over the opposite-order signed lattice
# ---------------------------------------------------------------------------

def cc_cumulants(
    phi: MultilinearFamily, chi: MultilinearFamily
) -> MultilinearFamily:
    """Recursive solution of the signed-lattice expansion: blocks inside the
    positives carry free cumulants of phi, zero-blocks the unknown family;
    the single-block partition isolates it."""
    _require_same_shape(phi, chi)
    if phi.N > DEFAULT_SIGNED_LIMIT:
        raise LimitExceeded(
            f"degree {phi.N} above signed enumeration limit {DEFAULT_SIGNED_LIMIT}"
        )
    kphi = free_cumulants(phi)._values
    cval = chi._values
    out: dict = {}
    for w in all_words(phi.k, phi.N):
        n = len(w)
        total = cval[w]
        for pos, zero in _bopp_table(n):
            if len(zero) == 1 and len(zero[0]) == n:
                continue
            term = Fraction(1)
            for b in pos:
                term *= kphi[tuple(w[p] for p in b)]
            for b in zero:
                term *= out[tuple(w[p] for p in b)]
            total -= term
        out[w] = total
    return MultilinearFamily(phi.k, phi.N, out, kind="cc-cumulant")


def moments_from_cc(
    phi: MultilinearFamily, kappa_cc: MultilinearFamily
) -> MultilinearFamily:
    """Forward signed-lattice sum reconstructing chi from phi and the
    alternative c-free cumulants."""
    _require_same_shape(phi, kappa_cc)
    if phi.N > DEFAULT_SIGNED_LIMIT:
        raise LimitExceeded(
            f"degree {phi.N} above signed enumeration limit {DEFAULT_SIGNED_LIMIT}"
        )
    kphi = free_cumulants(phi)._values
    cval = kappa_cc._values

    def fn(w):
        total = Fraction(0)
        for pos, zero in _bopp_table(len(w)):
            term = Fraction(1)
            for b in pos:
                term *= kphi[tuple(w[p] for p in b)]
            for b in zero:
                term *= cval[tuple(w[p] for p in b)]
            total += term
        return total

    return build_family(phi.k, phi.N, fn, kind="moment")


# ---------------------------------------------------------------------------
# Signed-lattice rewritings of the moment formulas (verification routines)
# ---------------------------------------------------------------------------

def eq_typeb_counterexample(
    phi: MultilinearFamily, phi_prime: MultilinearFamily, max_n: int | None = None
):
    """Check the type-B single-sum form of the derivative moments: the
    zero-block carries an infinitesimal cumulant, the symmetric pairs carry
    free cumulants of phi.  Returns the first failing word or None."""
    _require_same_shape(phi, phi_prime)
    max_n = phi.N if max_n is None else max_n
    kphi = free_cumulants(phi)._values
    kprime = infinitesimal_cumulants(phi, phi_prime)._values
    dval = phi_prime._values
    for w in all_words(phi.k, max_n):
        total = Fraction(0)
        for zero, pairs in _b_zero_table(len(w)):
            term = kprime[tuple(w[p] for p in zero)]
            for b in pairs:
                term *= kphi[tuple(w[p] for p in b)]
            total += term
        if total != dval[w]:
            return w
    return None


def eq_bopp_counterexample(
    phi: MultilinearFamily, chi: MultilinearFamily, max_n: int | None = None
):
    """Check the opposite-order single-sum form of chi - phi: zero-blocks
    carry alternative c-free cumulants, pairs carry free cumulants of phi.
    Returns the first failing word or None."""
    _require_same_shape(phi, chi)
    max_n = phi.N if max_n is None else max_n
    kphi = free_cumulants(phi)._values
    kcc = cc_cumulants(phi, chi)._values
    for w in all_words(phi.k, max_n):
        total = Fraction(0)
        for zero, pairs in _bopp_zero_table(len(w)):
            term = Fraction(1)
            for b in zero:
                term *= kcc[tuple(w[p] for p in b)]
            for b in pairs:
                term *= kphi[tuple(w[p] for p in b)]
            total += term
        if total != chi(w) - phi(w):
            return w
    return None
