from fractions import Fraction

import pytest

from ncprob import (
    MultilinearFamily,
    ShapeMismatch,
    all_words,
    boolean_cumulants,
    cc_cumulants,
    cfree_cumulants,
    cfree_explicit,
    enumerate_nc,
    eq_bopp_counterexample,
    eq_typeb_counterexample,
    free_cumulants,
    infinitesimal_cumulants,
    infinitesimal_moments,
    ll_one,
    moebius_to_one,
    moments_from_boolean,
    moments_from_cc,
    moments_from_cfree,
    moments_from_free,
    random_family,
    words_of_length,
    zero_family,
)


def ones(n):
    return tuple([1] * n)


def single_var_family(seq, kind="moment"):
    return MultilinearFamily(
        1, len(seq), {ones(i + 1): Fraction(v) for i, v in enumerate(seq)}, kind=kind
    )


# ---------------------------------------------------------------------------
# free cumulants
# ---------------------------------------------------------------------------

def test_free_cumulants_low_order():
    f = random_family(2, 3, seed=1)
    k = free_cumulants(f)
    assert k((1,)) == f((1,))
    assert k((1, 2)) == f((1, 2)) - f((1,)) * f((2,))


def nc_pairing_count(n):
    # independent segment-recurrence oracle for non-crossing pairings
    if n % 2:
        return 0
    memo = {0: 1}

    def rec(m):
        if m not in memo:
            memo[m] = sum(rec(2 * i) * rec(m - 2 - 2 * i) for i in range(m // 2))
        return memo[m]

    return rec(n)


def test_semicircle_style_moments():
    kappa = single_var_family([0, 1, 0, 0, 0, 0, 0, 0], kind="free-cumulant")
    phi = moments_from_free(kappa)
    for n in range(1, 9):
        assert phi(ones(n)) == nc_pairing_count(n)
    assert phi(ones(4)) == 2
    assert free_cumulants(phi) == kappa


def test_free_round_trip():
    for k in (1, 2, 3):
        f = random_family(k, 5, seed=40 + k)
        assert moments_from_free(free_cumulants(f)) == f
        assert free_cumulants(moments_from_free(f)) == f


def test_univariate_free_recursion_oracle():
    # nested-composition recursion, no partitions involved:
    # m_n = sum_s kappa_s * sum_{n_1+..+n_s = n-s} m_{n_1} ... m_{n_s}
    kappa = random_family(1, 7, seed=42, kind="free-cumulant")
    phi = moments_from_free(kappa)

    moments = {0: Fraction(1)}

    def spread(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in spread(total - first, parts - 1):
                yield (first,) + rest

    for n in range(1, 8):
        acc = Fraction(0)
        for s in range(1, n + 1):
            inner = Fraction(0)
            for split in spread(n - s, s):
                term = Fraction(1)
                for m in split:
                    term *= moments[m]
                inner += term
            acc += kappa(ones(s)) * inner
        moments[n] = acc
        assert phi(ones(n)) == acc


def test_univariate_boolean_recursion_oracle():
    # m_n = sum_s beta_s * m_{n-s}, peeling the leading interval block
    beta = random_family(1, 7, seed=43, kind="boolean-cumulant")
    phi = moments_from_boolean(beta)
    moments = {0: Fraction(1)}
    for n in range(1, 8):
        acc = sum(
            (beta(ones(s)) * moments[n - s] for s in range(1, n + 1)),
            Fraction(0),
        )
        moments[n] = acc
        assert phi(ones(n)) == acc


def test_free_cumulants_defining_sum():
    # the moment formula, written out independently over the lattice
    f = random_family(2, 4, seed=44)
    k = free_cumulants(f)
    for w in all_words(2, 4):
        total = Fraction(0)
        for pi in enumerate_nc(len(w)):
            term = Fraction(1)
            for b in pi.blocks:
                term *= k(tuple(w[p - 1] for p in b))
            total += term
        assert total == f(w)


# ---------------------------------------------------------------------------
# boolean cumulants
# ---------------------------------------------------------------------------

def test_boolean_low_order():
    f = random_family(2, 3, seed=2)
    b = boolean_cumulants(f)
    assert b((1,)) == f((1,))
    assert b((1, 2)) == f((1, 2)) - f((1,)) * f((2,))


def test_boolean_interval_pairing():
    beta = single_var_family([0, 1, 0, 0], kind="boolean-cumulant")
    phi = moments_from_boolean(beta)
    assert phi(ones(2)) == 1
    assert phi(ones(3)) == 0
    assert phi(ones(4)) == 1  # only the two adjacent pairs


def test_boolean_factorizes_over_singleton_support():
    beta = MultilinearFamily(
        2,
        4,
        {w: Fraction(2 + w[0]) if len(w) == 1 else Fraction(0) for w in all_words(2, 4)},
        kind="boolean-cumulant",
    )
    phi = moments_from_boolean(beta)
    for w in all_words(2, 4):
        expect = Fraction(1)
        for letter in w:
            expect *= beta((letter,))
        assert phi(w) == expect


def test_boolean_round_trip():
    for k in (1, 2, 3):
        f = random_family(k, 5, seed=50 + k)
        assert moments_from_boolean(boolean_cumulants(f)) == f
        assert boolean_cumulants(moments_from_boolean(f)) == f


# ---------------------------------------------------------------------------
# infinitesimal cumulants
# ---------------------------------------------------------------------------

def test_infinitesimal_low_order():
    f = random_family(2, 2, seed=3)
    g = random_family(2, 2, seed=4, kind="infinitesimal")
    kp = infinitesimal_cumulants(f, g)
    assert kp((1,)) == g((1,))
    assert kp((1, 2)) == g((1, 2)) - g((1,)) * f((2,)) - f((1,)) * g((2,))


def test_infinitesimal_zero():
    f = random_family(2, 4, seed=5)
    z = zero_family(2, 4)
    assert infinitesimal_cumulants(f, z) == zero_family(2, 4, kind="infinitesimal-cumulant")
    assert infinitesimal_moments(free_cumulants(f), z) == z


def test_infinitesimal_round_trip():
    for k in (1, 2, 3):
        f = random_family(k, 5, seed=60 + k)
        fp = random_family(k, 5, seed=70 + k, kind="infinitesimal")
        kf = free_cumulants(f)
        assert infinitesimal_moments(kf, infinitesimal_cumulants(f, fp)) == fp
        kp = random_family(k, 5, seed=80 + k, kind="infinitesimal-cumulant")
        assert infinitesimal_cumulants(f, infinitesimal_moments(kf, kp)) == kp


def test_infinitesimal_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        infinitesimal_cumulants(random_family(2, 3, seed=1), random_family(2, 4, seed=1))
    with pytest.raises(ShapeMismatch):
        infinitesimal_cumulants(random_family(1, 3, seed=1), random_family(2, 3, seed=1))


# ---------------------------------------------------------------------------
# c-free cumulants
# ---------------------------------------------------------------------------

def test_cfree_base_case():
    f = random_family(2, 1, seed=6)
    g = random_family(2, 1, seed=7)
    assert cfree_cumulants(f, g)((1,)) == g((1,))
    assert cfree_explicit(f, g)((2,)) == g((2,))


def test_cfree_second_order_is_boolean():
    f = random_family(2, 2, seed=8)
    g = random_family(2, 2, seed=9)
    kc = cfree_explicit(f, g)
    assert kc((1, 2)) == g((1, 2)) - g((1,)) * g((2,))


def test_cfree_collapses_when_families_agree():
    f = random_family(2, 5, seed=10)
    assert cfree_cumulants(f, f) == free_cumulants(f)


def test_cfree_round_trips():
    for k in (1, 2, 3):
        f = random_family(k, 5, seed=90 + k)
        g = random_family(k, 5, seed=100 + k)
        assert moments_from_cfree(f, cfree_cumulants(f, g)) == g
        kc = random_family(k, 5, seed=110 + k, kind="cfree-cumulant")
        assert cfree_cumulants(f, moments_from_cfree(f, kc)) == kc


def test_explicit_equals_recursive():
    for s in range(4):
        f = random_family(2, 5, seed=120 + s)
        g = random_family(2, 5, seed=130 + s)
        assert cfree_explicit(f, g) == cfree_cumulants(f, g)
    # traciality is not assumed anywhere above: both inputs were arbitrary


# ---------------------------------------------------------------------------
# resummation identities over the unique-outer-block partitions, length <= 6
# ---------------------------------------------------------------------------

def _ll_one_partitions(n):
    return [p for p in enumerate_nc(n) if ll_one(p)]


def test_free_cumulants_from_boolean_sum():
    phi = random_family(2, 6, seed=140)
    kphi = free_cumulants(phi)
    bphi = boolean_cumulants(phi)
    for w in all_words(2, 6):
        total = Fraction(0)
        for pi in _ll_one_partitions(len(w)):
            term = Fraction((-1) ** (len(pi.blocks) - 1))
            for b in pi.blocks:
                term *= bphi(tuple(w[p - 1] for p in b))
            total += term
        assert total == kphi(w)


def test_cfree_cumulants_from_boolean_sum():
    phi = random_family(2, 6, seed=141)
    chi = random_family(2, 6, seed=142)
    kc = cfree_cumulants(phi, chi)
    bphi = boolean_cumulants(phi)
    bchi = boolean_cumulants(chi)
    for w in all_words(2, 6):
        total = Fraction(0)
        for pi in _ll_one_partitions(len(w)):
            holder = pi.blocks[pi.block_of(1)]
            term = Fraction((-1) ** (len(pi.blocks) - 1))
            term *= bchi(tuple(w[p - 1] for p in holder))
            for b in pi.blocks:
                if b != holder:
                    term *= bphi(tuple(w[p - 1] for p in b))
            total += term
        assert total == kc(w)


def test_fixed_block_resummation():
    phi = random_family(2, 6, seed=143)
    bphi = boolean_cumulants(phi)
    for n in range(2, 7):
        by_holder = {}
        for pi in enumerate_nc(n):
            blk = pi.blocks[pi.block_of(1)]
            if n in blk:
                by_holder.setdefault(blk, []).append(pi)
        for holder, parts in by_holder.items():
            for w in words_of_length(2, n):
                lhs = Fraction(0)
                rhs = Fraction(0)
                for pi in parts:
                    t1 = Fraction((-1) ** (1 + len(pi.blocks)))
                    t2 = moebius_to_one(pi)
                    for b in pi.blocks:
                        if b == holder:
                            continue
                        t1 *= bphi(tuple(w[p - 1] for p in b))
                        t2 *= phi(tuple(w[p - 1] for p in b))
                    lhs += t1
                    rhs += t2
                assert lhs == rhs


# ---------------------------------------------------------------------------
# alternative c-free cumulants
# ---------------------------------------------------------------------------

def test_cc_difference_identity():
    for s in range(3):
        f = random_family(2, 5, seed=150 + s)
        g = random_family(2, 5, seed=160 + s)
        cc = cc_cumulants(f, g)
        kc = cfree_cumulants(f, g)
        kf = free_cumulants(f)
        for w in all_words(2, 5):
            assert cc(w) == kc(w) - kf(w)


def test_cc_vanishes_on_equal_families():
    f = random_family(2, 5, seed=170)
    cc = cc_cumulants(f, f)
    assert all(cc(w) == 0 for w in all_words(2, 5))


def test_cc_first_order():
    f = random_family(2, 1, seed=171)
    g = random_family(2, 1, seed=172)
    cc = cc_cumulants(f, g)
    assert cc((1,)) == g((1,)) - f((1,))


def test_cc_moment_round_trip():
    f = random_family(2, 4, seed=173)
    g = random_family(2, 4, seed=174)
    assert moments_from_cc(f, cc_cumulants(f, g)) == g


def test_signed_lattice_moment_rewritings():
    phi = random_family(2, 5, seed=180)
    phip = random_family(2, 5, seed=181, kind="infinitesimal")
    assert eq_typeb_counterexample(phi, phip) is None
    chi = random_family(2, 5, seed=182)
    assert eq_bopp_counterexample(phi, chi) is None


def test_internal_tables_match_public_enumeration():
    # the cached 0-based tables drive every transform; pin them to the
    # public objects
    from ncprob import (
        NcPartition,
        enumerate_ll_below,
        interval_partitions,
        one_partition,
    )
    from ncprob.cumulants import _interval_table, _ll_one_table, _nc_mob_table

    def lift(blocks):
        return tuple(sorted(tuple(x + 1 for x in b) for b in blocks))

    for n in range(1, 7):
        assert {lift(blocks) for _, blocks in _nc_mob_table(n)} == {
            p.blocks for p in enumerate_nc(n)
        }
        assert {lift(blocks) for blocks in _interval_table(n)} == {
            p.blocks for p in interval_partitions(n)
        }
        assert {
            lift((holder,) + others) for _, holder, others in _ll_one_table(n)
        } == {p.blocks for p in enumerate_ll_below(one_partition(n))}
        for mob, blocks in _nc_mob_table(n):
            assert moebius_to_one(NcPartition(n, lift(blocks))) == mob


def test_degenerate_degree_one():
    f = random_family(2, 1, seed=210)
    assert free_cumulants(f) == f
    assert boolean_cumulants(f) == f
    assert moments_from_free(f) == f


def test_transforms_preserve_shape_and_tag():
    f = random_family(2, 4, seed=190)
    k = free_cumulants(f)
    assert (k.k, k.N, k.kind) == (2, 4, "free-cumulant")
    assert boolean_cumulants(f).kind == "boolean-cumulant"
    assert cc_cumulants(f, f).kind == "cc-cumulant"
    g = random_family(2, 4, seed=191, kind="infinitesimal")
    kp = infinitesimal_cumulants(f, g)
    assert kp.kind == "infinitesimal-cumulant" and kp.unit == "zero"
