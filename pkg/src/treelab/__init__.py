"""Exact combinatorics of weakly increasing trees, their binary images,
and 312-avoiding permutations: bijections, statistics, counting formulas,
and generating-function identities, all over exact integer/rational
arithmetic."""

from .core import (
    BinaryNode,
    DomainError,
    InvalidTreeError,
    Multiset,
    MultisetSyntaxError,
    NodeIndexError,
    PlaneNode,
    TreeSyntaxError,
    Violation,
    binary_shapes,
    compositions,
    count_wit,
    enumerate_wibt,
    enumerate_wit,
    increasing_trees,
    parse_multiset,
    parse_wibt,
    parse_wit,
    plane_trees,
    render_wibt,
    render_wit,
    validate_wibt,
    validate_wit,
    wibt_from_json,
    wibt_to_json,
    wit_from_json,
    wit_to_json,
)
from .bijections import (
    PartnerEntry,
    PartnerMap,
    Phi,
    Psi,
    Theta,
    Theta_inv,
    hat_recursive,
    heads,
    mirror,
    odd_right_level_set,
    orbit_canonical,
    parity_toggle,
    partner_map,
    psi,
    rho,
    rho_inv,
    switch_at,
    theta,
    theta_inv,
    unbalanced_set,
    varphi,
)
from .stats import (
    BinaryStatVector,
    UnknownStatisticError,
    WitStatVector,
    binary_stats,
    distribution_polynomial,
    quadruple_convention_polynomial,
    stat_names,
    stat_value,
    transport_check,
    wit_stats,
)
from .perms import (
    Lambda,
    NotAvoidingError,
    NotPermutationError,
    PermStatVector,
    RepeatedLetterError,
    Upsilon,
    consecutive_pattern_count,
    enumerate_avoiding_312,
    from_shape,
    is_312_avoiding,
    lambda_inv,
    lambda_map,
    lemma31_check,
    parse_permutation,
    perm_stats,
    render_permutation,
    shape_of,
    st1,
    st2,
)
from .polynomials import Polynomial
from .series import SeriesDomainError, TruncatedSeries
from .identities import (
    Corollary34Report,
    UnsupportedParametersError,
    binomial,
    carlitz_scoville_check,
    carlitz_scoville_series,
    catalan,
    consecutive_132_distribution,
    corollary34_check,
    elizalde_noy_egf,
    eulerian_recurrence_residual,
    eulerian_refined,
    motzkin_poly,
    narayana,
    narayana_from_trees,
    narayana_gf_closed,
    narayana_gf_fixedpoint,
    pk1_distribution,
    pk1_egf_closed,
    plane_tree_old_leaf_count,
    refined_narayana_count,
    riccati_residual,
)

__version__ = "0.1.0"
