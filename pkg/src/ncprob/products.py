"""Free products and additive convolutions, free / c-free / infinitesimal.

Everything is constructed in cumulant space, exactly as the defining
prescriptions state it: products concatenate cumulants block-diagonally
with vanishing mixed terms, convolutions add cumulants entrywise, and the
moment tables are then rebuilt through the inverse transforms.
"""

from fractions import Fraction

from .errors import DegreeMismatch, DegreeTooLow, NotTracial, ShapeMismatch
from .families import (
    MultilinearFamily,
    Word,
    all_words,
    build_family,
    is_tracial,
    truncate,
)
from .cumulants import (
    cfree_cumulants,
    free_cumulants,
    infinitesimal_cumulants,
    infinitesimal_moments,
    moments_from_cfree,
    moments_from_free,
)
from .deltastar import psi_k


def _concat(c1: MultilinearFamily, c2: MultilinearFamily, kind: str) -> MultilinearFamily:
    """Block-diagonal cumulant table over k1+k2 generators: words staying in
    one group keep their cumulant, mixed words get zero."""
    k1, k2 = c1.k, c2.k

    def fn(w: Word) -> Fraction:
        if all(x <= k1 for x in w):
            return c1(w)
        if all(x > k1 for x in w):
            return c2(tuple(x - k1 for x in w))
        return Fraction(0)

    return build_family(k1 + k2, c1.N, fn, kind=kind)


def free_product(mu1: MultilinearFamily, mu2: MultilinearFamily) -> MultilinearFamily:
    """Free product of distributions over k and l generators."""
    if mu1.N != mu2.N:
        raise DegreeMismatch(f"degrees differ: {mu1.N} vs {mu2.N}")
    kappa = _concat(free_cumulants(mu1), free_cumulants(mu2), "free-cumulant")
    return moments_from_free(kappa)


def cfree_product(
    mu1: MultilinearFamily,
    nu1: MultilinearFamily,
    mu2: MultilinearFamily,
    nu2: MultilinearFamily,
) -> tuple[MultilinearFamily, MultilinearFamily]:
    """c-free product of two pairs; the second output is reconstructed from
    the concatenated c-free cumulant prescription relative to the product."""
    if not (mu1.N == nu1.N == mu2.N == nu2.N):
        raise DegreeMismatch("all four inputs must share one degree")
    if mu1.k != nu1.k or mu2.k != nu2.k:
        raise ShapeMismatch("each pair must share its generator count")
    mu = free_product(mu1, mu2)
    kc = _concat(
        cfree_cumulants(mu1, nu1), cfree_cumulants(mu2, nu2), "cfree-cumulant"
    )
    return mu, moments_from_cfree(mu, kc)


def infinitesimal_product(
    mu1: MultilinearFamily,
    mu1p: MultilinearFamily,
    mu2: MultilinearFamily,
    mu2p: MultilinearFamily,
) -> tuple[MultilinearFamily, MultilinearFamily]:
    """Infinitesimal free product of two pairs."""
    if not (mu1.N == mu1p.N == mu2.N == mu2p.N):
        raise DegreeMismatch("all four inputs must share one degree")
    if mu1.k != mu1p.k or mu2.k != mu2p.k:
        raise ShapeMismatch("each pair must share its generator count")
    mu = free_product(mu1, mu2)
    kp = _concat(
        infinitesimal_cumulants(mu1, mu1p),
        infinitesimal_cumulants(mu2, mu2p),
        "infinitesimal-cumulant",
    )
    return mu, infinitesimal_moments(free_cumulants(mu), kp)


def boxplus(mu1: MultilinearFamily, mu2: MultilinearFamily) -> MultilinearFamily:
    """Free additive convolution: free cumulants add entrywise."""
    if mu1.k != mu2.k or mu1.N != mu2.N:
        raise ShapeMismatch("inputs must share k and N")
    c1 = free_cumulants(mu1)._values
    c2 = free_cumulants(mu2)._values
    kappa = MultilinearFamily(
        mu1.k,
        mu1.N,
        {w: c1[w] + c2[w] for w in all_words(mu1.k, mu1.N)},
        kind="free-cumulant",
    )
    return moments_from_free(kappa)


def boxplus_c(
    mu1: MultilinearFamily,
    nu1: MultilinearFamily,
    mu2: MultilinearFamily,
    nu2: MultilinearFamily,
) -> tuple[MultilinearFamily, MultilinearFamily]:
    """c-free additive convolution of two pairs over one generator set."""
    if not (mu1.k == nu1.k == mu2.k == nu2.k):
        raise ShapeMismatch("all four inputs must share k")
    if not (mu1.N == nu1.N == mu2.N == nu2.N):
        raise ShapeMismatch("all four inputs must share N")
    mu = boxplus(mu1, mu2)
    c1 = cfree_cumulants(mu1, nu1)._values
    c2 = cfree_cumulants(mu2, nu2)._values
    kc = MultilinearFamily(
        mu1.k,
        mu1.N,
        {w: c1[w] + c2[w] for w in all_words(mu1.k, mu1.N)},
        kind="cfree-cumulant",
    )
    return mu, moments_from_cfree(mu, kc)


def boxplus_b(
    mu1: MultilinearFamily,
    mu1p: MultilinearFamily,
    mu2: MultilinearFamily,
    mu2p: MultilinearFamily,
) -> tuple[MultilinearFamily, MultilinearFamily]:
    """Infinitesimal free additive convolution of two pairs."""
    if not (mu1.k == mu1p.k == mu2.k == mu2p.k):
        raise ShapeMismatch("all four inputs must share k")
    if not (mu1.N == mu1p.N == mu2.N == mu2p.N):
        raise ShapeMismatch("all four inputs must share N")
    mu = boxplus(mu1, mu2)
    c1 = infinitesimal_cumulants(mu1, mu1p)._values
    c2 = infinitesimal_cumulants(mu2, mu2p)._values
    kp = MultilinearFamily(
        mu1.k,
        mu1.N,
        {w: c1[w] + c2[w] for w in all_words(mu1.k, mu1.N)},
        kind="infinitesimal-cumulant",
    )
    return mu, infinitesimal_moments(free_cumulants(mu), kp)


# ---------------------------------------------------------------------------
# Verification: the cyclic Boolean-cumulant map intertwines the c-free and
# infinitesimal operations
# ---------------------------------------------------------------------------

def product_intertwine_counterexample(
    mu1: MultilinearFamily,
    nu1: MultilinearFamily,
    mu2: MultilinearFamily,
    nu2: MultilinearFamily,
):
    """Free-product statement: mapping both second components through the
    cyclic Boolean-cumulant map and taking the infinitesimal product must
    land on the image of the c-free product's second component.  Inputs at
    degree N+1, comparison at degree N.  Returns a failing word or None."""
    if not (mu1.N == nu1.N == mu2.N == nu2.N):
        raise DegreeMismatch("all four inputs must share one degree")
    if mu1.N < 2:
        raise DegreeTooLow("inputs must have degree at least 2")
    if not is_tracial(mu1) or not is_tracial(mu2):
        raise NotTracial("mu1 and mu2 must be tracial")
    _, nu = cfree_product(mu1, nu1, mu2, nu2)
    _, mup = infinitesimal_product(
        truncate(mu1, mu1.N - 1),
        psi_k(nu1),
        truncate(mu2, mu2.N - 1),
        psi_k(nu2),
    )
    want = psi_k(nu)
    for w in all_words(mup.k, mup.N):
        if mup(w) != want(w):
            return w
    return None


def verify_product_intertwine(mu1, nu1, mu2, nu2) -> bool:
    return product_intertwine_counterexample(mu1, nu1, mu2, nu2) is None


def convolution_intertwine_counterexample(
    mu1: MultilinearFamily,
    nu1: MultilinearFamily,
    mu2: MultilinearFamily,
    nu2: MultilinearFamily,
):
    """Convolution statement, same shape as the product one.  Inputs at
    degree N+1, comparison at degree N.  Returns a failing word or None."""
    if not (mu1.k == nu1.k == mu2.k == nu2.k):
        raise ShapeMismatch("all four inputs must share k")
    if not (mu1.N == nu1.N == mu2.N == nu2.N):
        raise ShapeMismatch("all four inputs must share N")
    if mu1.N < 2:
        raise DegreeTooLow("inputs must have degree at least 2")
    if not is_tracial(mu1) or not is_tracial(mu2):
        raise NotTracial("mu1 and mu2 must be tracial")
    _, nu = boxplus_c(mu1, nu1, mu2, nu2)
    _, mup = boxplus_b(
        truncate(mu1, mu1.N - 1),
        psi_k(nu1),
        truncate(mu2, mu2.N - 1),
        psi_k(nu2),
    )
    want = psi_k(nu)
    for w in all_words(mup.k, mup.N):
        if mup(w) != want(w):
            return w
    return None


def verify_convolution_intertwine(mu1, nu1, mu2, nu2) -> bool:
    return convolution_intertwine_counterexample(mu1, nu1, mu2, nu2) is None
