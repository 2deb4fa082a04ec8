"""search/counterexamples.py: Pinned examples showing which hypotheses cannot be weakened."""

import math

from pydantic import BaseModel, ConfigDict, Field

from ..core.formulations import DEFAULT_TOL, check_elem_sym, check_exp, check_tuple3
from ..schema import Formulation, HypothesisReport
from ..symtuple import LogTuple, PositiveTuple, exp_sums, linearized_sum_sq, majorizes, sum_sq_log
from ..utils import holds_within

e = math.e
SQRT3 = math.sqrt(3.0)


class CasePattern(BaseModel):
    """Pass/fail pattern of one example: per hypothesis line, per equality, conclusion, extra predicates."""

    model_config = ConfigDict(frozen=True)

    margins_hold: list[bool]
    defects_hold: list[bool]
    conclusion_holds: bool
    extra: dict[str, bool] = Field(default_factory=dict)


class PinnedValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    stated: float
    computed: float
    rel_tol: float = 1e-12
    abs_tol: float = 0.0

    @property
    def matches(self) -> bool:
        return math.isclose(self.computed, self.stated, rel_tol=self.rel_tol, abs_tol=self.abs_tol)


class PinnedCase(BaseModel):
    """One pinned example. `formulation`, `left` and `right` are enough to re-run it through `verify`."""

    model_config = ConfigDict(frozen=True)

    name: str
    description: str
    formulation: Formulation
    left: list[float]
    right: list[float]
    report: HypothesisReport
    expected: CasePattern
    observed: CasePattern
    values: list[PinnedValue]
    notes: list[str] = Field(default_factory=list)

    @property
    def matches(self) -> bool:
        return self.expected == self.observed and all(v.matches for v in self.values)


def observed_pattern(report: HypothesisReport, extra: dict[str, bool] | None = None) -> CasePattern:
    return CasePattern(
        margins_hold=[holds_within(m, s, report.tolerance) for m, s in zip(report.margins, report.scales)],
        defects_hold=[abs(d) <= report.tolerance for d in report.equality_defects],
        conclusion_holds=report.conclusion_holds,
        extra=extra or {},
    )


def _case(name: str, description: str, report: HypothesisReport, left: list[float], right: list[float],
          expected: CasePattern, values: list[PinnedValue], extra: dict[str, bool] | None = None,
          notes: list[str] | None = None) -> PinnedCase:
    return PinnedCase(name=name, description=description, formulation=report.formulation, left=left, right=right,
                      report=report, expected=expected, observed=observed_pattern(report, extra), values=values,
                      notes=notes or [])


def example_without_e2(tol: float = DEFAULT_TOL) -> PinnedCase:
    """Dropping the e_2 line: the sums dominate and the products agree, yet 36+0+36 < 16+16+64."""

    y, a = PositiveTuple.of(e ** 6, 1.0, e ** -6), PositiveTuple.of(e ** 4, e ** 4, e ** -8)
    return _case("ex1", "second dominance condition removed", check_tuple3(y, a, tol), list(y.values),
                 list(a.values),
                 expected=CasePattern(margins_hold=[True, False], defects_hold=[True], conclusion_holds=False),
                 values=[PinnedValue(name="sum_sq_log_y", stated=72.0, computed=sum_sq_log(y)),
                         PinnedValue(name="sum_sq_log_a", stated=96.0, computed=sum_sq_log(a))])


def example_relaxed_product(tol: float = DEFAULT_TOL) -> PinnedCase:
    """Relaxing the product equality to y1 y2 y3 >= a1 a2 a3: 1+0+0 < 0+0+4."""

    y, a = PositiveTuple.of(e, 1.0, 1.0), PositiveTuple.of(1.0, 1.0, e ** -2)
    report = check_tuple3(y, a, tol)
    product_y, product_a = math.prod(y.values), math.prod(a.values)
    return _case("ex2", "product equality relaxed to an inequality", report, list(y.values), list(a.values),
                 expected=CasePattern(margins_hold=[True, True], defects_hold=[False], conclusion_holds=False,
                                      extra={"relaxed_product_holds": True, "rejected_by_premise_filter": True}),
                 extra={"relaxed_product_holds": product_y >= product_a,
                        "rejected_by_premise_filter": not report.hypotheses_hold},
                 values=[PinnedValue(name="sum_sq_log_y", stated=1.0, computed=sum_sq_log(y)),
                         PinnedValue(name="sum_sq_log_a", stated=4.0, computed=sum_sq_log(a)),
                         PinnedValue(name="product_y", stated=e, computed=product_y),
                         PinnedValue(name="product_a", stated=e ** -2, computed=product_a)])


def example_four_numbers(tol: float = DEFAULT_TOL) -> PinnedCase:
    """n = 4 with dominating e_1, e_2 and equal products, yet 324 < 482.

    e_3 does not dominate here, so the example does not contradict the general-n conjecture.
    """

    y = PositiveTuple.of(e, e ** 7, e ** 7, e ** -15)
    a = PositiveTuple.of(e ** 6, e ** 6, e ** 7, e ** -19)
    report = check_elem_sym(y, a, tol)
    return _case("ex3", "four numbers with the first two dominance conditions only", report, list(y.values),
                 list(a.values),
                 expected=CasePattern(margins_hold=[True, True, False], defects_hold=[True], conclusion_holds=False,
                                      extra={"consistent_with_conjecture": True}),
                 extra={"consistent_with_conjecture": report.conclusion_holds or not report.hypotheses_hold},
                 values=[PinnedValue(name="sum_sq_log_y", stated=324.0, computed=sum_sq_log(y)),
                         PinnedValue(name="sum_sq_log_a", stated=482.0, computed=sum_sq_log(a))],
                 notes=[f"e_3 margin {report.margins[2]!r} is negative: all of e_1..e_3 would have to dominate"])


def example_linearized(tol: float = DEFAULT_TOL) -> PinnedCase:
    """Replacing log(t) by t - 1 breaks the inequality: 64+16+(44/45)^2 < 9^2+0+(9/10)^2,
    while the squared-log conclusion still holds on the same tuples."""

    y, a = PositiveTuple.of(9.0, 5.0, 1.0 / 45.0), PositiveTuple.of(10.0, 1.0, 0.1)
    lin_y, lin_a = linearized_sum_sq(y), linearized_sum_sq(a)
    return _case("ex4", "logarithm replaced by its linearization", check_tuple3(y, a, tol), list(y.values),
                 list(a.values),
                 expected=CasePattern(margins_hold=[True, True], defects_hold=[True], conclusion_holds=True,
                                      extra={"linearized_holds": False}),
                 extra={"linearized_holds": lin_y >= lin_a},
                 values=[PinnedValue(name="linearized_y", stated=64.0 + 16.0 + (44.0 / 45.0) ** 2, computed=lin_y),
                         PinnedValue(name="linearized_a", stated=81.81, computed=lin_a)])


def example_not_majorization(tol: float = DEFAULT_TOL) -> PinnedCase:
    """Exponential hypotheses hold and the conclusion holds, but z does not majorize c since z_1 < c_1."""

    z = LogTuple.of(0.5 + 0.95 / (2 * SQRT3), 0.5 + 0.85 / (2 * SQRT3), -1.0 - 0.9 / SQRT3)
    c = LogTuple.of(0.5 + 1.0 / (2 * SQRT3), -0.5 + 1.0 / (2 * SQRT3), -1.0 / SQRT3)
    pos_z, neg_z = exp_sums(z)
    pos_c, neg_c = exp_sums(c)
    return _case("non_majorization", "the inequality is not majorization in disguise", check_exp(z, c, tol),
                 list(z.values), list(c.values),
                 expected=CasePattern(margins_hold=[True, True], defects_hold=[True], conclusion_holds=True,
                                      extra={"majorizes": False, "z1_below_c1": True}),
                 extra={"majorizes": majorizes(z, c), "z1_below_c1": z.values[0] < c.values[0]},
                 values=[PinnedValue(name="exp_sum_z", stated=4.49497, computed=pos_z, rel_tol=0.0, abs_tol=1e-5),
                         PinnedValue(name="exp_sum_c", stated=3.57137, computed=pos_c, rel_tol=0.0, abs_tol=1e-5),
                         PinnedValue(name="neg_exp_sum_z", stated=5.50607, computed=neg_z, rel_tol=0.0, abs_tol=1e-5),
                         PinnedValue(name="neg_exp_sum_c", stated=3.47107, computed=neg_c, rel_tol=0.0,
                                     abs_tol=1e-5)])


def pinned_counterexamples(tol: float = DEFAULT_TOL) -> list[PinnedCase]:
    return [example_without_e2(tol), example_relaxed_product(tol), example_four_numbers(tol),
            example_linearized(tol), example_not_majorization(tol)]
