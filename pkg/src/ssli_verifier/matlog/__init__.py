from .formulations import MATRIX_CHECKERS, check_charpol, check_frobenius
from .linalg import (cof, dev3, frobenius_sq, geodesic_dist_iso_sq, hencky, inv_spd, log_real_diagonalizable, log_spd,
                     matrix_exp, polar, principal_log_batch, skew_part, spd_certificate, sqrt_spd, sym_eig, sym_part)
from .types import EigenDecomp, Mat, SymMat

__all__ = [
    "EigenDecomp",
    "MATRIX_CHECKERS",
    "Mat",
    "SymMat",
    "check_charpol",
    "check_frobenius",
    "cof",
    "dev3",
    "frobenius_sq",
    "geodesic_dist_iso_sq",
    "hencky",
    "inv_spd",
    "log_real_diagonalizable",
    "log_spd",
    "matrix_exp",
    "polar",
    "principal_log_batch",
    "skew_part",
    "spd_certificate",
    "sqrt_spd",
    "sym_eig",
    "sym_part",
]
