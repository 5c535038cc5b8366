"""The acceptance suite behind the CLI selftest verb.

Each criterion is a function (seed) -> (ok, detail); the runner prints one
line per criterion.  Everything is exact equality on rationals and fully
deterministic for a fixed seed.
"""

import json
from fractions import Fraction
from functools import lru_cache

from . import (
    Flavor,
    NcPartition,
    all_words,
    attach,
    boolean_cumulants,
    catalan,
    cc_cumulants,
    cfree_cumulants,
    cfree_explicit,
    cfree_product,
    convolution_intertwine_counterexample,
    cut,
    cyclic_cumulant_counterexample,
    cumulant_transform_counterexample,
    enumerate_nc,
    enumerate_signed,
    eq_bopp_counterexample,
    eq_typeb_counterexample,
    free_cumulants,
    from_pair,
    gamma_eta_counterexample,
    infinitesimal_cumulants,
    infinitesimal_moments,
    infinitesimal_product,
    is_interval,
    kreweras,
    leq,
    ll_one,
    moebius_oracle,
    moebius_to_one,
    moments_from_boolean,
    moments_from_cfree,
    moments_from_free,
    one_partition,
    outer_blocks,
    product_intertwine_counterexample,
    psi_k,
    random_delta,
    random_family,
    random_tracial,
    relabel,
    signed_count,
    sqsubseteq,
    to_pair,
    truncate,
    words_of_length,
)
from .cumulants import _ll_one_table, _nc_mob_table


def _criterion_catalan(seed):
    for n in range(1, 11):
        if len(enumerate_nc(n)) != catalan(n):
            return False, f"count mismatch at n={n}"
    return True, "|NC(n)| matches the Catalan numbers for n=1..10"


def _criterion_kreweras(seed):
    reference = NcPartition(10, [(1, 5, 6), (2, 4), (3,), (7,), (8, 10), (9,)])
    expected = NcPartition(10, [(1, 4), (2, 3), (5,), (6, 7, 10), (8, 9)])
    if kreweras(reference) != expected:
        return False, "worked 10-point complement is wrong"
    for n in range(1, 8):
        parts = enumerate_nc(n)
        index = {p: i for i, p in enumerate(parts)}
        kimg = [kreweras(p) for p in parts]
        if len(set(kimg)) != len(parts):
            return False, f"not injective at n={n}"
        kidx = [index[q] for q in kimg]
        lem = [[leq(a, b) for b in parts] for a in parts]
        for i in range(len(parts)):
            for j in range(len(parts)):
                if lem[i][j] != lem[kidx[j]][kidx[i]]:
                    return False, f"order reversal fails at n={n}"
    return True, "order-reversing bijection on NC(n) for n<=7, worked example exact"


def _criterion_moebius(seed):
    for n in range(1, 8):
        one = one_partition(n)
        for p in enumerate_nc(n):
            if moebius_to_one(p) != moebius_oracle(p, one):
                return False, f"closed form != zeta inversion at n={n}, {p}"
    return True, "signed-Catalan closed form equals zeta inversion for n<=7"


def _criterion_ideals(seed):
    for n in range(1, 8):
        parts = enumerate_nc(n)
        lem = [[leq(a, b) for b in parts] for a in parts]
        llm = [
            [
                lem[i][j]
                and all(
                    parts[i]._owner[b[0]] == parts[i]._owner[b[-1]]
                    for b in parts[j].blocks
                )
                for j in range(len(parts))
            ]
            for i in range(len(parts))
        ]
        for j, rho in enumerate(parts):
            count = sum(1 for i in range(len(parts)) if llm[i][j])
            expect = 1
            for b in rho.blocks:
                expect *= catalan(len(b) - 1)
            if count != expect:
                return False, f"lower-ideal cardinality fails at n={n}, {rho}"
        for i, pi in enumerate(parts):
            acc = 0
            for j in range(len(parts)):
                if llm[i][j]:
                    acc += (-1) ** (len(pi.blocks) - len(parts[j].blocks))
            if acc != (1 if is_interval(pi) else 0):
                return False, f"alternating indicator fails at n={n}, {pi}"
    return True, "lower-ideal counts and alternating-sum indicator exact for n<=7"


def _criterion_cut_attach(seed):
    from .nc import BlockRole, block_roles, ll

    for n in range(1, 8):
        parts = enumerate_nc(n)
        domain = [p for p in parts if ll_one(p)]
        image = {kreweras(p) for p in domain}
        want = {s for s in parts if (n,) in s.blocks}
        if image != want:
            return False, f"image of the restricted complement wrong at n={n}"
        for a in domain:
            ka = kreweras(a)
            for b in domain:
                if sqsubseteq(a, b) != ll(kreweras(b), ka):
                    return False, f"anti-isomorphism fails at n={n}"
        for p in domain:
            roles = block_roles(p)
            for idx, blk in enumerate(p.blocks):
                if roles[idx] is not BlockRole.INNER:
                    continue
                for x in blk[:-1]:
                    if kreweras(cut(p, x)) != attach(kreweras(p), x):
                        return False, f"cut/attach duality fails at n={n}, i={x}"
    return True, "complement anti-isomorphism and cut/attach duality exact for n<=7"


def _criterion_signed_counts(seed):
    for n in range(1, 8):
        cb = len(enumerate_signed(n, Flavor.B))
        co = len(enumerate_signed(n, Flavor.B_OPP))
        if not cb == co == signed_count(n):
            return False, f"count mismatch at n={n}: {cb}, {co}"
    for n in range(1, 7):
        for sigma in enumerate_signed(n, Flavor.B_OPP):
            pi, chosen = to_pair(sigma)
            if from_pair(pi, chosen) != sigma:
                return False, f"pair bijection fails at n={n}"
        total = sum(2 ** len(outer_blocks(p)) for p in enumerate_nc(n))
        if total != signed_count(n):
            return False, f"outer-block subset count fails at n={n}"
    return True, "both signed lattices counted by C(2n,n) for n<=7, bijection round-trips for n<=6"


def _criterion_round_trips(seed):
    for i in range(20):
        k = 1 + i % 2
        s = seed * 1000 + i
        phi = random_family(k, 5, seed=s)
        if moments_from_free(free_cumulants(phi)) != phi:
            return False, f"free round trip fails at draw {i}"
        if free_cumulants(moments_from_free(phi)) != phi:
            return False, f"free reverse round trip fails at draw {i}"
        if moments_from_boolean(boolean_cumulants(phi)) != phi:
            return False, f"boolean round trip fails at draw {i}"
        if boolean_cumulants(moments_from_boolean(phi)) != phi:
            return False, f"boolean reverse round trip fails at draw {i}"
        phip = random_family(k, 5, seed=s + 7000, kind="infinitesimal")
        kphi = free_cumulants(phi)
        if infinitesimal_moments(kphi, infinitesimal_cumulants(phi, phip)) != phip:
            return False, f"infinitesimal round trip fails at draw {i}"
        chi = random_family(k, 5, seed=s + 9000)
        if moments_from_cfree(phi, cfree_cumulants(phi, chi)) != chi:
            return False, f"c-free round trip fails at draw {i}"
    return True, "free/boolean/infinitesimal/c-free transforms invert on 20 seeded families"


def _lemma_free_from_boolean(bphi, w):
    total = Fraction(0)
    for _, holder, others in _ll_one_table(len(w)):
        sign = -1 if len(others) % 2 else 1
        term = Fraction(sign)
        term *= bphi[tuple(w[p] for p in holder)]
        for b in others:
            term *= bphi[tuple(w[p] for p in b)]
        total += term
    return total


def _lemma_cfree_from_boolean(bphi, bchi, w):
    total = Fraction(0)
    for _, holder, others in _ll_one_table(len(w)):
        sign = -1 if len(others) % 2 else 1
        term = Fraction(sign) * bchi[tuple(w[p] for p in holder)]
        for b in others:
            term *= bphi[tuple(w[p] for p in b)]
        total += term
    return total


@lru_cache(maxsize=None)
def _fixed_block_table(n):
    """For each block containing 0 and n-1: the partitions having it, as
    (parity sign, Moebius value, other blocks)."""
    out: dict = {}
    for mob, blocks in _nc_mob_table(n):
        sign = 1 if (1 + len(blocks)) % 2 == 0 else -1
        for b in blocks:
            if 0 in b and n - 1 in b:
                others = tuple(x for x in blocks if x != b)
                out.setdefault(b, []).append((sign, mob, others))
    return {h: tuple(v) for h, v in out.items()}


def _lemma_fixed_block_sums(bphi, val, w, holder0):
    """Both sides of the fixed-outer-block resummation, for one word."""
    lhs = Fraction(0)
    rhs = Fraction(0)
    for sign, mob, others in _fixed_block_table(len(w))[holder0]:
        t1 = Fraction(sign)
        t2 = Fraction(mob)
        for b in others:
            t1 *= bphi[tuple(w[p] for p in b)]
            t2 *= val[tuple(w[p] for p in b)]
        lhs += t1
        rhs += t2
    return lhs, rhs


def _criterion_cfree_formula(seed):
    import itertools

    for i in range(20):
        s = seed * 1000 + 100 + i
        phi = random_family(2, 5, seed=s)
        chi = random_family(2, 5, seed=s + 5000)
        if cfree_explicit(phi, chi) != cfree_cumulants(phi, chi):
            return False, f"explicit formula != recursion at draw {i}"
        bphi = boolean_cumulants(phi)._values
        bchi = boolean_cumulants(chi)._values
        kphi = free_cumulants(phi)
        kc = cfree_cumulants(phi, chi)
        for w in all_words(2, 5):
            if kphi(w) != _lemma_free_from_boolean(bphi, w):
                return False, f"free-from-boolean resummation fails at {w}"
            if kc(w) != _lemma_cfree_from_boolean(bphi, bchi, w):
                return False, f"c-free boolean resummation fails at {w}"
        val = phi._values
        for n in range(2, 6):
            for mid in itertools.chain.from_iterable(
                itertools.combinations(range(1, n - 1), r) for r in range(n - 1)
            ):
                holder0 = tuple(sorted((0, n - 1) + mid))
                for w in words_of_length(2, n):
                    lhs, rhs = _lemma_fixed_block_sums(bphi, val, w, holder0)
                    if lhs != rhs:
                        return False, f"fixed-block resummation fails at {w}"
    return True, "explicit c-free formula and the three resummation lemmas exact on 20 pairs"


def _criterion_cc(seed):
    for i in range(20):
        s = seed * 1000 + 300 + i
        phi = random_family(2, 5, seed=s)
        chi = random_family(2, 5, seed=s + 5000)
        kcc = cc_cumulants(phi, chi)
        kc = cfree_cumulants(phi, chi)
        kphi = free_cumulants(phi)
        for w in all_words(2, 5):
            if kcc(w) != kc(w) - kphi(w):
                return False, f"difference identity fails at draw {i}, word {w}"
    phi = random_family(2, 5, seed=seed * 1000 + 901)
    phip = random_family(2, 5, seed=seed * 1000 + 902, kind="infinitesimal")
    chi = random_family(2, 5, seed=seed * 1000 + 903)
    if eq_typeb_counterexample(phi, phip) is not None:
        return False, "type-B moment reconstruction fails"
    if eq_bopp_counterexample(phi, chi) is not None:
        return False, "opposite-order moment reconstruction fails"
    return True, "signed-lattice cumulants equal the difference; moment rewritings exact"


def _criterion_transform_theorem(seed):
    for i in range(50):
        s = seed * 1000 + 400 + i
        phi = random_tracial(2, 5, seed=s)
        chi = random_family(2, 5, seed=s + 5000)
        delta = random_delta(2, seed=s + 9000)
        bad = cumulant_transform_counterexample(delta, phi, chi)
        if bad is not None:
            return False, f"transform identity fails at draw {i}, word {bad}"
    return True, "tensor transform identity exact on 50 seeded triples, k=2, N=4"


def _criterion_cyclic_theorem(seed):
    for i in range(50):
        s = seed * 1000 + 500 + i
        mu = random_tracial(2, 5, seed=s)
        nu = random_family(2, 5, seed=s + 5000)
        bad = cyclic_cumulant_counterexample(mu, nu)
        if bad is not None:
            return False, f"cyclic identity fails at draw {i}, word {bad}"
    for i in range(50):
        s = seed * 1000 + 550 + i
        mu = random_family(1, 7, seed=s)
        nu = random_family(1, 7, seed=s + 5000)
        bad = cyclic_cumulant_counterexample(mu, nu)
        if bad is not None:
            return False, f"univariate cyclic identity fails at draw {i}"
        beta = boolean_cumulants(nu)
        mup = psi_k(nu)
        for n in range(1, 7):
            w = tuple([1] * n)
            if mup(w) != n * beta(tuple([1] * (n + 1))):
                return False, f"univariate moment formula fails at n={n}"
    return True, "cyclic cumulant identity exact on 50 pairs at k=2 and 50 at k=1"


def _criterion_gamma_eta(seed):
    phi = random_tracial(2, 5, seed=seed * 1000 + 600)
    chi = random_family(2, 6, seed=seed * 1000 + 601)
    delta = random_delta(2, seed=seed * 1000 + 602)
    cases = 0
    for n in range(1, 5):
        for rho in enumerate_nc(n + 1):
            if not ll_one(rho):
                continue
            for m in range(1, n + 1):
                bad = gamma_eta_counterexample(delta, chi, phi, n, m, rho)
                if bad is not None:
                    return False, f"block identity fails at n={n}, m={m}, {rho}"
                cases += 1
    return True, f"block-level transform identity exhaustive for n<=4 ({cases} cases)"


def _check_restrictions(product_nu, nu1, nu2, k):
    for w in all_words(nu1.k, nu1.N):
        if product_nu(w) != nu1(w):
            return False
    shifted = relabel(nu2, k)
    for w in all_words(nu2.k, nu2.N):
        sw = tuple(x + k for x in w)
        if product_nu(sw) != shifted(sw):
            return False
    return True


def _criterion_products(seed):
    for i in range(25):
        s = seed * 1000 + 700 + i
        k = 1 if i < 13 else 2
        mu1 = random_tracial(k, 5, seed=s)
        nu1 = random_family(k, 5, seed=s + 3000)
        mu2 = random_tracial(k, 5, seed=s + 6000)
        nu2 = random_family(k, 5, seed=s + 9000)
        bad = convolution_intertwine_counterexample(mu1, nu1, mu2, nu2)
        if bad is not None:
            return False, f"convolution intertwine fails at draw {i}, word {bad}"
    for i in range(25):
        s = seed * 1000 + 800 + i
        k, l = (1, 1) if i < 13 else (2, 1)
        mu1 = random_tracial(k, 4, seed=s)
        nu1 = random_family(k, 4, seed=s + 3000)
        mu2 = random_tracial(l, 4, seed=s + 6000)
        nu2 = random_family(l, 4, seed=s + 9000)
        bad = product_intertwine_counterexample(mu1, nu1, mu2, nu2)
        if bad is not None:
            return False, f"product intertwine fails at draw {i}, word {bad}"
        mu, nu = cfree_product(mu1, nu1, mu2, nu2)
        if not _check_restrictions(mu, mu1, mu2, k):
            return False, f"free product restriction fails at draw {i}"
        if not _check_restrictions(nu, nu1, nu2, k):
            return False, f"c-free restriction fails at draw {i}"
        p1 = psi_k(nu1)
        p2 = psi_k(nu2)
        _, mup = infinitesimal_product(truncate(mu1, 3), p1, truncate(mu2, 3), p2)
        if not _check_restrictions(mup, p1, p2, k):
            return False, f"infinitesimal restriction fails at draw {i}"
    return True, "both intertwine theorems exact on 25 seeded instances each, restrictions included"


def verify_report(theorem: str, seed: int, k: int, big_n: int, l: int = 1) -> dict:
    """One-shot verification with seeded random inputs; shared by the CLI."""
    from .nc import BlockRole, block_roles, ll

    ce = None
    extra: dict = {}
    if theorem == "12":
        mu1 = random_tracial(k, big_n + 1, seed=seed)
        nu1 = random_family(k, big_n + 1, seed=seed + 1)
        mu2 = random_tracial(k, big_n + 1, seed=seed + 2)
        nu2 = random_family(k, big_n + 1, seed=seed + 3)
        ce = convolution_intertwine_counterexample(mu1, nu1, mu2, nu2)
    elif theorem == "13":
        mu1 = random_tracial(k, big_n + 1, seed=seed)
        nu1 = random_family(k, big_n + 1, seed=seed + 1)
        mu2 = random_tracial(l, big_n + 1, seed=seed + 2)
        nu2 = random_family(l, big_n + 1, seed=seed + 3)
        ce = product_intertwine_counterexample(mu1, nu1, mu2, nu2)
    elif theorem == "14":
        mu = random_tracial(k, big_n + 1, seed=seed)
        nu = random_family(k, big_n + 1, seed=seed + 1)
        ce = cyclic_cumulant_counterexample(mu, nu)
    elif theorem == "17":
        phi = random_tracial(k, big_n + 1, seed=seed)
        chi = random_family(k, big_n + 1, seed=seed + 1)
        delta = random_delta(k, seed=seed + 2)
        ce = cumulant_transform_counterexample(delta, phi, chi)
    elif theorem == "lemma210":
        ce_txt = None
        for n in range(2, min(big_n, 7) + 1):
            for p in enumerate_nc(n):
                if not ll_one(p):
                    continue
                roles = block_roles(p)
                for idx, blk in enumerate(p.blocks):
                    if roles[idx] is not BlockRole.INNER:
                        continue
                    for x in blk[:-1]:
                        if kreweras(cut(p, x)) != attach(kreweras(p), x):
                            ce_txt = f"n={n}, partition {p}, i={x}"
        ce = ce_txt
    elif theorem == "lemma67":
        phi = random_tracial(k, max(big_n, 2) + 1, seed=seed)
        chi = random_family(k, max(big_n, 2) + 2, seed=seed + 1)
        delta = random_delta(k, seed=seed + 2)
        for n in range(1, max(big_n, 2) + 1):
            for rho in enumerate_nc(n + 1):
                if not ll_one(rho):
                    continue
                for m in range(1, n + 1):
                    bad = gamma_eta_counterexample(delta, chi, phi, n, m, rho)
                    if bad is not None:
                        ce = list(bad)
    elif theorem == "prop41":
        phi = random_family(k, big_n, seed=seed)
        chi = random_family(k, big_n, seed=seed + 1)
        a = cfree_explicit(phi, chi)
        b = cfree_cumulants(phi, chi)
        ce = next((list(w) for w in all_words(k, big_n) if a(w) != b(w)), None)
    elif theorem == "prop54":
        phi = random_family(k, min(big_n, 5), seed=seed)
        chi = random_family(k, min(big_n, 5), seed=seed + 1)
        kcc = cc_cumulants(phi, chi)
        kc = cfree_cumulants(phi, chi)
        kf = free_cumulants(phi)
        ce = next(
            (
                list(w)
                for w in all_words(k, phi.N)
                if kcc(w) != kc(w) - kf(w)
            ),
            None,
        )
    elif theorem == "eq5a":
        phi = random_family(k, min(big_n, 5), seed=seed)
        phip = random_family(k, min(big_n, 5), seed=seed + 1, kind="infinitesimal")
        bad = eq_typeb_counterexample(phi, phip)
        ce = list(bad) if bad is not None else None
    elif theorem == "eq55a":
        phi = random_family(k, min(big_n, 5), seed=seed)
        chi = random_family(k, min(big_n, 5), seed=seed + 1)
        bad = eq_bopp_counterexample(phi, chi)
        ce = list(bad) if bad is not None else None
    else:
        raise ValueError(f"unknown verification target {theorem!r}")
    if isinstance(ce, tuple):
        ce = list(ce)
    report = {
        "theorem": theorem,
        "seed": seed,
        "k": k,
        "N": big_n,
        "ok": ce is None,
        "counterexample": ce,
    }
    report.update(extra)
    return report


def _criterion_determinism(seed):
    a = json.dumps(verify_report("14", seed, 2, 3), sort_keys=True)
    b = json.dumps(verify_report("14", seed, 2, 3), sort_keys=True)
    if a != b:
        return False, "seeded verification report is not reproducible"
    return True, "seeded verification reports are byte-identical across runs"


CRITERIA = (
    (1, "catalan counts", _criterion_catalan),
    (2, "kreweras complement", _criterion_kreweras),
    (3, "moebius closed form vs zeta inversion", _criterion_moebius),
    (4, "lower/upper ideal structure", _criterion_ideals),
    (5, "complement anti-isomorphism, cut/attach", _criterion_cut_attach),
    (6, "signed lattice counts and pair bijection", _criterion_signed_counts),
    (7, "moment/cumulant round trips", _criterion_round_trips),
    (8, "explicit c-free formula and resummations", _criterion_cfree_formula),
    (9, "signed-lattice cumulant identities", _criterion_cc),
    (10, "tensor transform identity", _criterion_transform_theorem),
    (11, "cyclic cumulant identity", _criterion_cyclic_theorem),
    (12, "block-level transform identity", _criterion_gamma_eta),
    (13, "product and convolution intertwining", _criterion_products),
    (14, "report determinism", _criterion_determinism),
)


def run(seed: int = 0, stream=None) -> bool:
    """Run every criterion, print one line each, return overall success."""
    all_ok = True
    for num, name, fn in CRITERIA:
        ok, detail = fn(seed)
        all_ok = all_ok and ok
        print(f"[{num:2d}] {'PASS' if ok else 'FAIL'} {name}: {detail}", file=stream)
    print(f"selftest: {'all criteria passed' if all_ok else 'FAILURES present'}",
          file=stream)
    return all_ok
