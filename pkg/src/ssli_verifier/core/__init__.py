from .formulations import (CHECKERS, check_2d, check_elem_sym, check_exp, check_exp_zero_sum, check_inverse_sum,
                           check_means, check_squared, check_tuple3, equality_case, normalize_sum_zero)
from .lemma import (SphericalPair, chebyshev_exp_identity, consequence_either, lemma1_equivalence, lemma_dF_dr,
                    lemma_dh_dphi, lemma_dh_dr, lemma_f, lemma_F, lemma_h, scale_to_norm, scan_lemma_grid,
                    spherical_from_leading)

__all__ = [
    "CHECKERS",
    "SphericalPair",
    "chebyshev_exp_identity",
    "check_2d",
    "check_elem_sym",
    "check_exp",
    "check_exp_zero_sum",
    "check_inverse_sum",
    "check_means",
    "check_squared",
    "check_tuple3",
    "consequence_either",
    "equality_case",
    "lemma1_equivalence",
    "lemma_F",
    "lemma_dF_dr",
    "lemma_dh_dphi",
    "lemma_dh_dr",
    "lemma_f",
    "lemma_h",
    "normalize_sum_zero",
    "scale_to_norm",
    "scan_lemma_grid",
    "spherical_from_leading",
]
