"""schema/campaign.py: Campaign configuration, per-trial records and mergeable summaries."""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from .exceptions import ArgumentError, UsageError


class CampaignMode(str, Enum):
    CONJECTURE = "conjecture"
    THEOREM3 = "theorem3"
    OPTIMALITY = "optimality"


class CampaignConfig(BaseModel):
    """Parameters of one sampling campaign.

    Trials are processed in blocks of `block_size`; each block draws from its own
    generator seeded from (seed, block index), so the thread count never changes
    the result and is left out of the serialized echo.
    """

    model_config = ConfigDict(frozen=True)

    mode: CampaignMode = CampaignMode.CONJECTURE
    n: int = 3
    trials: int = 10_000
    seed: int = 0
    # standard width of the log-coordinates drawn by the samplers
    spread: float = 1.0
    block_size: int = 4096
    threads: int = Field(default=1, exclude=True)
    # rotations tried per matrix in optimality mode
    rot_samples: int = 1000
    # theorem3 premise sampler retries before falling back to the last draw
    premise_attempts: int = 8
    violation_tol: float = 1e-9
    optimality_tol: float = 1e-8

    @model_validator(mode="after")
    def _check(self) -> "CampaignConfig":
        if self.trials < 1:
            raise UsageError(f"trials must be >= 1, got {self.trials}")
        if not (math.isfinite(self.spread) and self.spread > 0):
            raise UsageError(f"spread must be a positive finite number, got {self.spread}")
        if self.n < 2:
            raise UsageError(f"n must be >= 2, got {self.n}")
        if self.mode in (CampaignMode.THEOREM3, CampaignMode.OPTIMALITY) and self.n != 3:
            raise UsageError(f"{self.mode.value} mode works on n = 3 only, got n = {self.n}")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.block_size < 1 or self.threads < 1 or self.rot_samples < 1 or self.premise_attempts < 1:
            raise UsageError("block_size, threads, rot_samples and premise_attempts must all be >= 1")
        if self.violation_tol < 0 or self.optimality_tol < 0:
            raise UsageError("tolerances must be non-negative")
        return self

    @property
    def blocks(self) -> int:
        return -(-self.trials // self.block_size)

    def block_range(self, block: int) -> range:
        start = block * self.block_size
        return range(start, min(start + self.block_size, self.trials))


class TrialRecord(BaseModel):
    """One sampled instance. Tuple modes fill y/a, optimality mode fills matrix/rotation."""

    model_config = ConfigDict(frozen=True)

    trial_index: int
    y: list[float] | None = None
    a: list[float] | None = None
    matrix: list[list[float]] | None = None
    rotation: list[list[float]] | None = None
    hypothesis_margins: list[float] = Field(default_factory=list)
    eq_defect: float = 0.0
    premises_hold: bool
    conclusion_margin: float
    violation: bool
    # a violation needs conclusion_margin < -violation_tol * conclusion_scale
    violation_tol: float = 0.0
    conclusion_scale: float = 1.0
    # optimality records: the polar factor itself misses the reference value
    attainment: bool = False
    # exact float encodings, written for violation records only
    y_hex: list[str] | None = None
    a_hex: list[str] | None = None
    matrix_hex: list[str] | None = None

    @model_validator(mode="after")
    def _check(self) -> "TrialRecord":
        if self.violation_tol < 0 or self.conclusion_scale <= 0:
            raise ArgumentError(f"trial {self.trial_index}: violation_tol must be >= 0 and conclusion_scale > 0")
        threshold = -self.violation_tol * self.conclusion_scale
        if self.violation and not (self.premises_hold and self.conclusion_margin < threshold):
            raise ArgumentError(f"trial {self.trial_index}: a violation needs holding premises and a conclusion "
                                f"margin below {threshold!r}, got premises_hold={self.premises_hold}, "
                                f"conclusion_margin={self.conclusion_margin}")
        return self


def _min_or_none(lhs: float | None, rhs: float | None) -> float | None:
    if lhs is None:
        return rhs
    if rhs is None:
        return lhs
    return min(lhs, rhs)


def _max_or_none(lhs: float | None, rhs: float | None) -> float | None:
    if lhs is None:
        return rhs
    if rhs is None:
        return lhs
    return max(lhs, rhs)


class CampaignSummary(BaseModel):
    """Aggregate of a campaign or of a block of it. `merge` is associative."""

    config: CampaignConfig
    trials_run: int = 0
    premises_hold_count: int = 0
    # premise-holding trials whose margins sit inside the violation dead zone
    borderline_count: int = 0
    violations: list[TrialRecord] = Field(default_factory=list)
    min_conclusion_margin_over_premise_holding: float | None = None

    # optimality mode
    evaluations: int = 0
    skipped: int = 0
    low_coverage_trials: list[int] = Field(default_factory=list)
    max_attainment_gap: float | None = None
    min_value_gap: float | None = None

    wall_time: float = Field(default=0.0, exclude=True)

    @computed_field
    @property
    def premise_rate(self) -> float:
        return self.premises_hold_count / self.trials_run if self.trials_run else 0.0

    @computed_field
    @property
    def skip_rate(self) -> float:
        attempted = self.evaluations + self.skipped
        return self.skipped / attempted if attempted else 0.0

    @property
    def has_violations(self) -> bool:
        return bool(self.violations)

    @property
    def is_finding(self) -> bool:
        """A violation in conjecture mode is a finding, not a failure."""
        return self.has_violations and self.config.mode == CampaignMode.CONJECTURE

    def merge(self, other: "CampaignSummary") -> "CampaignSummary":
        if other.config != self.config:
            raise ArgumentError("cannot merge summaries of different campaign configurations")

        return CampaignSummary(
            config=self.config,
            trials_run=self.trials_run + other.trials_run,
            premises_hold_count=self.premises_hold_count + other.premises_hold_count,
            borderline_count=self.borderline_count + other.borderline_count,
            violations=sorted(self.violations + other.violations, key=lambda r: r.trial_index),
            min_conclusion_margin_over_premise_holding=_min_or_none(
                self.min_conclusion_margin_over_premise_holding, other.min_conclusion_margin_over_premise_holding),
            evaluations=self.evaluations + other.evaluations,
            skipped=self.skipped + other.skipped,
            low_coverage_trials=sorted(self.low_coverage_trials + other.low_coverage_trials),
            max_attainment_gap=_max_or_none(self.max_attainment_gap, other.max_attainment_gap),
            min_value_gap=_min_or_none(self.min_value_gap, other.min_value_gap),
            wall_time=self.wall_time + other.wall_time,
        )
