"""Exact-arithmetic combinatorics of non-crossing partitions and the
cumulants of truncated noncommutative distributions."""

from .errors import (
    DegreeMismatch,
    DegreeTooLow,
    DimMismatch,
    EmptySubset,
    InvalidPartition,
    IsBlockMax,
    LimitExceeded,
    NcprobError,
    NotComparable,
    NotInner,
    NotLLOne,
    NotOuter,
    NotTracial,
    PositionOutOfRange,
    ShapeMismatch,
    SizeMismatch,
)
from .nc import (
    BlockRole,
    NcPartition,
    attach,
    block_roles,
    catalan,
    cut,
    enumerate_ll_below,
    enumerate_nc,
    f_nm,
    f_nm_inverse,
    interval_partitions,
    is_interval,
    is_noncrossing,
    kreweras,
    leq,
    ll,
    ll_one,
    moebius_oracle,
    moebius_to_one,
    one_partition,
    outer_blocks,
    parent_block,
    sqsubseteq,
    zero_partition,
)
from .typeb import (
    Flavor,
    SignedNcPartition,
    abs_partition,
    enumerate_signed,
    from_pair,
    signed_count,
    to_pair,
    zero_blocks,
)
from .families import (
    DeltaTensor,
    MultilinearFamily,
    all_words,
    build_family,
    diagonal_delta,
    is_tracial,
    random_delta,
    random_family,
    random_tracial,
    relabel,
    restrict,
    truncate,
    words_of_length,
    zero_family,
)
from .cumulants import (
    boolean_cumulants,
    cc_cumulants,
    cfree_cumulants,
    cfree_explicit,
    eq_bopp_counterexample,
    eq_typeb_counterexample,
    free_cumulants,
    infinitesimal_cumulants,
    infinitesimal_moments,
    moments_from_boolean,
    moments_from_cc,
    moments_from_cfree,
    moments_from_free,
)
from .deltastar import (
    cumulant_transform_counterexample,
    cyclic_cumulant_counterexample,
    delta_star,
    eval_eta,
    eval_gamma,
    gamma_eta_counterexample,
    psi_delta,
    psi_k,
    verify_gamma_eta,
    verify_theorem_cyclic,
    verify_theorem_delta,
)
from .products import (
    boxplus,
    boxplus_b,
    boxplus_c,
    cfree_product,
    convolution_intertwine_counterexample,
    free_product,
    infinitesimal_product,
    product_intertwine_counterexample,
    verify_convolution_intertwine,
    verify_product_intertwine,
)

__version__ = "0.1.0"
