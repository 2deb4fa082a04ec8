"""core/formulations.py: Hypothesis/conclusion checkers for the tuple-level formulations of the inequality.

Every checker returns a HypothesisReport whose margins are positive when a
hypothesis line is satisfied strictly. The conclusion is always a comparison
of sums of squared logarithms (or of squares, at the log level).
"""

import math
from typing import Sequence

import numpy as np

from ..schema import ArgumentError, Formulation, HypothesisReport, TheoremViolationError
from ..symtuple import LogTuple, PositiveTuple, elem_sym_all, exp_sums, means, sum_sq_log

DEFAULT_TOL = 1e-12
RIGIDITY_TOL = 1e-8

Tuple = PositiveTuple | Sequence[float] | np.ndarray
Logs = LogTuple | Sequence[float] | np.ndarray


def _pair(y: Tuple, a: Tuple, n: int | None, name: str) -> tuple[PositiveTuple, PositiveTuple]:
    y, a = PositiveTuple.coerce(y), PositiveTuple.coerce(a)
    if y.n != a.n:
        raise ArgumentError(f"{name} needs tuples of equal length, got {y.n} and {a.n}")
    if n is not None and y.n != n:
        raise ArgumentError(f"{name} needs tuples of length {n}, got {y.n}")
    return y, a


def _log_pair(z: Logs, c: Logs, name: str) -> tuple[LogTuple, LogTuple]:
    z, c = LogTuple.coerce(z), LogTuple.coerce(c)
    if z.n != 3 or c.n != 3:
        raise ArgumentError(f"{name} needs tuples of length 3, got {z.n} and {c.n}")
    return z, c


def relative_defect(lhs: float, rhs: float) -> float:
    """(lhs - rhs) relative to the larger magnitude, 0 when both vanish."""

    scale = max(abs(lhs), abs(rhs))
    return (lhs - rhs) / scale if scale > 0 else 0.0


def _sum_defect(z: LogTuple, c: LogTuple) -> float:
    scale = max(1.0, max(map(abs, z.values)), max(map(abs, c.values)))
    return (z.sum - c.sum) / scale


def _square_sum(z: LogTuple) -> float:
    return math.fsum(v * v for v in z.values)


def check_elem_sym(y: Tuple, a: Tuple, tol: float = DEFAULT_TOL, eq_tol: float | None = None,
                   formulation: Formulation = Formulation.ELEMSYM) -> HypothesisReport:
    """e_k(y) >= e_k(a) for k = 1..n-1 and e_n(y) = e_n(a), for tuples of any common length n >= 2."""

    y, a = _pair(y, a, None, "check_elem_sym")
    ey, ea = elem_sym_all(y), elem_sym_all(a)
    n = y.n
    return HypothesisReport.evaluate(formulation,
                                     sides=[(ey[k], ea[k]) for k in range(1, n)],
                                     equality_defects=[relative_defect(ey[n], ea[n])],
                                     conclusion=(sum_sq_log(y), sum_sq_log(a)),
                                     tol=tol, eq_tol=eq_tol)


def check_tuple3(y: Tuple, a: Tuple, tol: float = DEFAULT_TOL, eq_tol: float | None = None) -> HypothesisReport:
    y, a = _pair(y, a, 3, "check_tuple3")
    return check_elem_sym(y, a, tol, eq_tol, formulation=Formulation.TUPLE3)


def check_inverse_sum(y: Tuple, a: Tuple, tol: float = DEFAULT_TOL, eq_tol: float | None = None) -> HypothesisReport:
    """Sum and sum-of-reciprocals dominance with equal products."""

    y, a = _pair(y, a, 3, "check_inverse_sum")
    inv_y = math.fsum(1.0 / v for v in y.values)
    inv_a = math.fsum(1.0 / v for v in a.values)
    ey, ea = elem_sym_all(y), elem_sym_all(a)
    return HypothesisReport.evaluate(Formulation.INVERSE_SUM,
                                     sides=[(ey[1], ea[1]), (inv_y, inv_a)],
                                     equality_defects=[relative_defect(ey[3], ea[3])],
                                     conclusion=(sum_sq_log(y), sum_sq_log(a)),
                                     tol=tol, eq_tol=eq_tol)


def check_means(y: Tuple, a: Tuple, tol: float = DEFAULT_TOL, eq_tol: float | None = None) -> HypothesisReport:
    """A(y) >= A(a), H(a) >= H(y) (the reversed line), G(y) = G(a).

    The conclusion 3*Q(log y)^2 >= 3*Q(log a)^2 is the plain sum of squared logarithms.
    """

    y, a = _pair(y, a, 3, "check_means")
    my, ma = means(y), means(a)
    return HypothesisReport.evaluate(Formulation.MEANS,
                                     sides=[(my.A, ma.A), (ma.H, my.H)],
                                     equality_defects=[relative_defect(my.G, ma.G)],
                                     conclusion=(sum_sq_log(y), sum_sq_log(a)),
                                     tol=tol, eq_tol=eq_tol)


def check_squared(x: Tuple, d: Tuple, tol: float = DEFAULT_TOL, eq_tol: float | None = None) -> HypothesisReport:
    """Symmetric-polynomial dominance of the squares x_i^2 over d_i^2.

    The conclusion compares the unsquared variables, sum (log x_i)^2 against sum (log d_i)^2,
    which is a quarter of the conclusion of the squared tuples.
    """

    x, d = _pair(x, d, 3, "check_squared")
    ex = elem_sym_all([v * v for v in x.values])
    ed = elem_sym_all([v * v for v in d.values])
    return HypothesisReport.evaluate(Formulation.SQUARED,
                                     sides=[(ex[1], ed[1]), (ex[2], ed[2])],
                                     equality_defects=[relative_defect(ex[3], ed[3])],
                                     conclusion=(sum_sq_log(x), sum_sq_log(d)),
                                     tol=tol, eq_tol=eq_tol)


def check_2d(x: Tuple, d: Tuple, tol: float = DEFAULT_TOL, eq_tol: float | None = None) -> HypothesisReport:
    """Two-dimensional case: sum of squares dominance with equal products.

    The reciprocal condition sum 1/x_i^2 >= sum 1/d_i^2 follows automatically and is
    reported as a derived margin.
    """

    x, d = _pair(x, d, 2, "check_2d")
    sq_x = math.fsum(v * v for v in x.values)
    sq_d = math.fsum(v * v for v in d.values)
    inv_x = math.fsum(1.0 / (v * v) for v in x.values)
    inv_d = math.fsum(1.0 / (v * v) for v in d.values)
    return HypothesisReport.evaluate(Formulation.TWO_D,
                                     sides=[(sq_x, sq_d)],
                                     equality_defects=[relative_defect(x.values[0] * x.values[1],
                                                                       d.values[0] * d.values[1])],
                                     conclusion=(sum_sq_log(x), sum_sq_log(d)),
                                     tol=tol, eq_tol=eq_tol,
                                     derived_margins=[inv_x - inv_d])


def check_exp(z: Logs, c: Logs, tol: float = DEFAULT_TOL, eq_tol: float | None = None,
              formulation: Formulation = Formulation.EXP) -> HypothesisReport:
    """Exponential-sum dominance in both directions for log-tuples of equal sum.

    Raises:
        ArgumentError: when the sums differ beyond the equality tolerance.
    """

    z, c = _log_pair(z, c, "check_exp")
    eq_tol = tol if eq_tol is None else eq_tol
    defect = _sum_defect(z, c)
    if abs(defect) > eq_tol:
        raise ArgumentError(f"check_exp needs equal sums, got {z.sum!r} and {c.sum!r}")

    pos_z, neg_z = exp_sums(z)
    pos_c, neg_c = exp_sums(c)
    return HypothesisReport.evaluate(formulation,
                                     sides=[(pos_z, pos_c), (neg_z, neg_c)],
                                     equality_defects=[defect],
                                     conclusion=(_square_sum(z), _square_sum(c)),
                                     tol=tol, eq_tol=eq_tol)


def normalize_sum_zero(z: Logs) -> LogTuple:
    """Shifts z by its mean so the entries sum to zero."""

    z = LogTuple.coerce(z)
    mean = z.sum / z.n
    if mean == 0.0:
        return z
    return LogTuple(values=[v - mean for v in z.values])


def check_exp_zero_sum(z: Logs, c: Logs, tol: float = DEFAULT_TOL, eq_tol: float | None = None) -> HypothesisReport:
    """check_exp after shifting both tuples to sum zero; the common shift preserves every sign."""

    z, c = _log_pair(z, c, "check_exp_zero_sum")
    eq_tol = tol if eq_tol is None else eq_tol
    if abs(_sum_defect(z, c)) > eq_tol:
        raise ArgumentError(f"check_exp_zero_sum needs equal sums, got {z.sum!r} and {c.sum!r}")
    return check_exp(normalize_sum_zero(z), normalize_sum_zero(c), tol, eq_tol,
                     formulation=Formulation.EXP_ZERO_SUM)


def equality_case(z: Logs, c: Logs, tol: float = DEFAULT_TOL, rigidity_tol: float = RIGIDITY_TOL) -> bool:
    """True iff the conclusion of the exponential formulation is attained with equality.

    When it is, the tuples must coincide entrywise within `rigidity_tol`.

    Raises:
        ArgumentError:         when the exponential hypotheses do not hold.
        TheoremViolationError: when the squared sums agree but the tuples do not.
    """

    report = check_exp(z, c, tol)
    if not report.hypotheses_hold:
        raise ArgumentError(f"equality_case needs the exponential hypotheses to hold, margins {report.margins}")

    z, c = LogTuple.coerce(z), LogTuple.coerce(c)
    if abs(report.conclusion_margin) > tol * max(1.0, report.conclusion_lhs, report.conclusion_rhs):
        return False

    deviation = max(abs(u - v) for u, v in zip(z.values, c.values))
    if deviation > rigidity_tol:
        raise TheoremViolationError(f"equal squared sums with {z.values} != {c.values} "
                                    f"(max deviation {deviation!r} > {rigidity_tol!r})")
    return True


CHECKERS = {
    Formulation.TUPLE3: check_tuple3,
    Formulation.ELEMSYM: check_elem_sym,
    Formulation.INVERSE_SUM: check_inverse_sum,
    Formulation.MEANS: check_means,
    Formulation.SQUARED: check_squared,
    Formulation.TWO_D: check_2d,
    Formulation.EXP: check_exp,
    Formulation.EXP_ZERO_SUM: check_exp_zero_sum,
}
