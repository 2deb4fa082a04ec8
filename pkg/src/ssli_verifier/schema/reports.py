"""schema/reports.py: Report models returned by the formulation checkers and the lemma grid scan."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from ..utils import holds_within, larger_side


class Formulation(str, Enum):
    """Formulations of the sum-of-squared-logarithms inequality a checker can evaluate."""

    CHARPOL = "charpol"
    TUPLE3 = "tuple3"
    ELEMSYM = "elemsym"
    INVERSE_SUM = "inverse_sum"
    MEANS = "means"
    SQUARED = "squared"
    FROBENIUS = "frobenius"
    EXP = "exp"
    EXP_ZERO_SUM = "exp_zero_sum"
    TWO_D = "2d"

    @property
    def is_matrix(self) -> bool:
        return self in (Formulation.CHARPOL, Formulation.FROBENIUS)

    @property
    def is_log_level(self) -> bool:
        return self in (Formulation.EXP, Formulation.EXP_ZERO_SUM)


class HypothesisReport(BaseModel):
    """Outcome of one formulation check.

    Sign convention: a positive margin means the hypothesis line is satisfied
    strictly, whatever direction the inequality is written in (the harmonic mean
    line is reported as H(a) - H(y)). Equality defects are relative.
    """

    model_config = ConfigDict(frozen=True)

    formulation: Formulation
    margins: list[float]
    # larger side of each hypothesis line, the scale of its relative tolerance
    scales: list[float] = Field(default_factory=list, exclude=True)
    equality_defects: list[float]
    derived_margins: list[float] = Field(default_factory=list)
    hypotheses_hold: bool
    conclusion_lhs: float
    conclusion_rhs: float
    conclusion_margin: float
    conclusion_holds: bool
    tolerance: float
    notes: list[str] = Field(default_factory=list)

    @classmethod
    def evaluate(cls,
                 formulation: Formulation,
                 sides: list[tuple[float, float]],
                 equality_defects: list[float],
                 conclusion: tuple[float, float],
                 tol: float,
                 eq_tol: float | None = None,
                 derived_margins: list[float] | None = None,
                 notes: list[str] | None = None,
                 ) -> "HypothesisReport":
        """Builds a report from (lhs, rhs) pairs, one per hypothesis line, each oriented so lhs >= rhs is wanted.

        Args:
            :param formulation:      Formulation the sides come from.
            :param sides:            (lhs, rhs) for every inequality-type hypothesis.
            :param equality_defects: Relative defects of the equality-type hypotheses.
            :param conclusion:       (lhs, rhs) of the squared-log conclusion.
            :param tol:              Relative tolerance on the larger side of every line.
            :param eq_tol:           Tolerance on the equality defects, defaults to `tol`.
        """

        eq_tol = tol if eq_tol is None else eq_tol
        margins = [lhs - rhs for lhs, rhs in sides]
        scales = [larger_side(lhs, rhs) for lhs, rhs in sides]
        hypotheses_hold = all(holds_within(m, s, tol) for m, s in zip(margins, scales)) \
            and all(abs(d) <= eq_tol for d in equality_defects)

        lhs, rhs = conclusion
        conclusion_margin = lhs - rhs
        conclusion_holds = holds_within(conclusion_margin, larger_side(lhs, rhs, floor=1.0), tol)

        return cls(formulation=formulation,
                   margins=margins,
                   scales=scales,
                   equality_defects=list(equality_defects),
                   derived_margins=list(derived_margins or []),
                   hypotheses_hold=hypotheses_hold,
                   conclusion_lhs=lhs,
                   conclusion_rhs=rhs,
                   conclusion_margin=conclusion_margin,
                   conclusion_holds=conclusion_holds,
                   tolerance=tol,
                   notes=list(notes or []))

    @property
    def theorem_contradicted(self) -> bool:
        return self.hypotheses_hold and not self.conclusion_holds


class GridPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    r: float
    phi: float


class LemmaScanReport(BaseModel):
    """Extremes of F and of dh/dr over an (r, phi) grid, with their locations.

    max_dF_dr and h_monotonicity_violations are informational and do not decide `passed`.
    """

    model_config = ConfigDict(frozen=True)

    r_min: float
    r_max: float
    r_steps: int
    phi_steps: int
    tolerance: float
    points: int

    max_F: float
    max_F_at: GridPoint
    min_dh_dr: float
    min_dh_dr_at: GridPoint
    # adjacent grid pairs along a row where h fails to decrease strictly in phi
    h_monotonicity_violations: int
    max_dF_dr: float
    max_dF_dr_at: GridPoint
    # relative deviation of dh/dr from central differences, only when requested
    max_fd_rel_error: float | None = None
    # largest |F - e^(-r cos phi) dh/dphi / r| over the grid
    max_identity_error: float

    F_claim_holds: bool
    dh_dr_claim_holds: bool
    identity_holds: bool

    @property
    def passed(self) -> bool:
        return self.F_claim_holds and self.dh_dr_claim_holds and self.identity_holds
