"""matlog/formulations.py: Matrix-level formulations on pairs of symmetric positive definite matrices."""

from typing import Any

import numpy as np

from .linalg import cof, frobenius_sq, inv_spd, log_spd, spd_certificate
from .types import SymMat
from ..core.formulations import DEFAULT_TOL, relative_defect
from ..schema import ArgumentError, Formulation, HypothesisReport


def _spd_pair(p1: Any, p2: Any, name: str) -> tuple[SymMat, SymMat]:
    p1 = p1 if isinstance(p1, SymMat) else SymMat(entries=p1)
    p2 = p2 if isinstance(p2, SymMat) else SymMat(entries=p2)
    if p1.dim != p2.dim:
        raise ArgumentError(f"{name} needs matrices of equal dimension, got {p1.dim} and {p2.dim}")
    spd_certificate(p1)
    spd_certificate(p2)
    return p1, p2


def _conclusion(p1: SymMat, p2: SymMat) -> tuple[float, float]:
    return frobenius_sq(log_spd(p1)), frobenius_sq(log_spd(p2))


def check_charpol(p1: Any, p2: Any, tol: float = DEFAULT_TOL, eq_tol: float | None = None) -> HypothesisReport:
    """tr P1 >= tr P2, tr Cof P1 >= tr Cof P2 and det P1 = det P2, concluding ||log P1||^2 >= ||log P2||^2.

    In 2D, tr Cof P = tr P, so only the trace line is checked; the reciprocal condition
    ||P1^-1||^2 >= ||P2^-1||^2 it implies is reported as a derived margin.
    """

    p1, p2 = _spd_pair(p1, p2, "check_charpol")
    sides = [(p1.trace(), p2.trace())]
    derived, notes = [], []
    if p1.dim == 3:
        sides.append((cof(p1).trace(), cof(p2).trace()))
    else:
        derived.append(frobenius_sq(inv_spd(p1)) - frobenius_sq(inv_spd(p2)))
        notes.append("2x2: tr Cof P = tr P, the cofactor line is dropped and the inverse condition is derived")

    return HypothesisReport.evaluate(Formulation.CHARPOL,
                                     sides=sides,
                                     equality_defects=[relative_defect(float(np.linalg.det(p1.entries)),
                                                                       float(np.linalg.det(p2.entries)))],
                                     conclusion=_conclusion(p1, p2),
                                     tol=tol, eq_tol=eq_tol, derived_margins=derived, notes=notes)


def check_frobenius(p1: Any, p2: Any, tol: float = DEFAULT_TOL, eq_tol: float | None = None) -> HypothesisReport:
    """||P1||^2 >= ||P2||^2, ||P1^-1||^2 >= ||P2^-1||^2 and det P1 = det P2, same conclusion as check_charpol."""

    p1, p2 = _spd_pair(p1, p2, "check_frobenius")
    return HypothesisReport.evaluate(Formulation.FROBENIUS,
                                     sides=[(frobenius_sq(p1), frobenius_sq(p2)),
                                            (frobenius_sq(inv_spd(p1)), frobenius_sq(inv_spd(p2)))],
                                     equality_defects=[relative_defect(float(np.linalg.det(p1.entries)),
                                                                       float(np.linalg.det(p2.entries)))],
                                     conclusion=_conclusion(p1, p2),
                                     tol=tol, eq_tol=eq_tol)


MATRIX_CHECKERS = {
    Formulation.CHARPOL: check_charpol,
    Formulation.FROBENIUS: check_frobenius,
}
