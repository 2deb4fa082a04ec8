"""CampaignRunner.py: Seeded sampling campaigns for the conjecture, the three-number theorem and the
optimality of the polar factor.

Trials are grouped in fixed-size blocks. Each block draws from its own generator
(`sampling.block_rng`), blocks run on worker threads through anyio, and block
summaries are merged in block order, so the thread count never changes a result.
"""

import csv
import math
import time
import traceback
from functools import reduce
from typing import Callable

import anyio
import numpy as np
from anyio import to_thread

from .sampling import block_rng, equal_product_logs, premise_logs, random_invertible, random_rotations
from ..core.formulations import check_elem_sym
from ..logger import get_logger
from ..matlog.linalg import frobenius_sq, log_spd, polar, principal_log_batch
from ..properties import ToleranceProperties
from ..schema import (ArgumentError, CampaignConfig, CampaignMode, CampaignSummary, FileAccessError, HypothesisReport,
                      TrialRecord)
from ..utils import from_hex, to_hex

# trials whose share of inadmissible rotations exceeds this are flagged as low coverage
LOW_COVERAGE_SKIP_RATE = 0.5

BlockResult = tuple[CampaignSummary, list[list]]


def elem_sym_rows(x: np.ndarray) -> np.ndarray:
    """Row-wise [e_0, ..., e_n] of an (N, n) array, by the same recurrence as `symtuple.elem_sym_all`."""

    count, n = x.shape
    coeffs = np.zeros((count, n + 1))
    coeffs[:, 0] = 1.0
    for i in range(n):
        coeffs[:, 1:i + 2] = coeffs[:, 1:i + 2] + x[:, i:i + 1] * coeffs[:, 0:i + 1]
    return coeffs


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_header(cfg: CampaignConfig) -> list[str]:
    if cfg.mode == CampaignMode.OPTIMALITY:
        return ["trial", "evaluations", "skipped", "min_value_gap", "attainment_gap", "low_coverage"]
    return ["trial", "premises_hold", *[f"margin_{k}" for k in range(1, cfg.n)], "eq_defect", "conclusion_margin",
            "violation"]


class TrialCsvWriter:
    """Streams per-trial CSV rows to a file in block order while blocks finish in any order.

    Blocks that finish early wait in memory until every earlier block has been written.
    Without a path every submission is dropped.
    """

    path: str | None
    header: list[str]

    def __init__(self, path: str | None, header: list[str]):
        self.path = path
        self.header = header
        self._file = None
        self._writer = None
        self._pending: dict[int, list[list]] = {}
        self._next_block = 0
        self.rows_written = 0

    def __enter__(self) -> "TrialCsvWriter":
        if self.path:
            try:
                self._file = open(self.path, "w", newline="", encoding="utf-8")
            except OSError as e:
                raise FileAccessError(f"Cannot write CSV file {self.path}: {e}")
            self._writer = csv.writer(self._file)
            self._write([self.header])
        return self

    def __exit__(self, exc_type, exc, tb):
        if self._file is not None:
            self._file.close()
            if exc_type is None:
                get_logger().info(f"Wrote {self.rows_written} trial rows to {self.path}.")

    def submit(self, block: int, rows: list[list]):
        if self._writer is None:
            return
        self._pending[block] = rows
        while self._next_block in self._pending:
            rows = self._pending.pop(self._next_block)
            self._write([_fmt(v) for v in row] for row in rows)
            self.rows_written += len(rows)
            self._next_block += 1

    def _write(self, rows):
        try:
            self._writer.writerows(rows)
        except OSError as e:
            raise FileAccessError(f"Cannot write CSV file {self.path}: {e}")


class CampaignRunner:
    tolerances: ToleranceProperties
    csv_path: str | None

    def __init__(self, tolerances: ToleranceProperties | None = None, csv_path: str | None = None):
        self.tolerances = tolerances or ToleranceProperties()
        self.csv_path = csv_path

    def run(self, cfg: CampaignConfig) -> CampaignSummary:
        if cfg.mode == CampaignMode.CONJECTURE:
            return self.run_conjecture_campaign(cfg)
        if cfg.mode == CampaignMode.THEOREM3:
            return self.run_theorem3_campaign(cfg)
        return self.run_optimality_campaign(cfg)

    def run_conjecture_campaign(self, cfg: CampaignConfig) -> CampaignSummary:
        """Independent equal-product pairs of length n; violations are findings, never failures."""

        self._require_mode(cfg, CampaignMode.CONJECTURE)
        summary = self._run(cfg, self._tuple_block)
        if summary.has_violations:
            get_logger().warning(f"Conjecture campaign found {len(summary.violations)} violation(s) for n = {cfg.n}.")
        return summary

    def run_theorem3_campaign(self, cfg: CampaignConfig) -> CampaignSummary:
        """Premise-respecting triples; any violation contradicts the theorem."""

        self._require_mode(cfg, CampaignMode.THEOREM3)
        summary = self._run(cfg, self._tuple_block)
        if summary.has_violations:
            get_logger().error(f"Theorem campaign produced {len(summary.violations)} violation(s).")
        return summary

    def run_optimality_campaign(self, cfg: CampaignConfig) -> CampaignSummary:
        """Random invertible Z against random rotations Q: ||log Q^T Z||^2 never drops below ||log H||^2."""

        self._require_mode(cfg, CampaignMode.OPTIMALITY)
        summary = self._run(cfg, self._optimality_block)
        if summary.has_violations:
            get_logger().error(f"Optimality campaign produced {len(summary.violations)} violation(s).")
        return summary

    @staticmethod
    def _require_mode(cfg: CampaignConfig, mode: CampaignMode):
        if cfg.mode != mode:
            raise ArgumentError(f"campaign expects mode '{mode.value}', got '{cfg.mode.value}'")

    def _run(self, cfg: CampaignConfig, block_fn: Callable[[CampaignConfig, int], BlockResult]) -> CampaignSummary:
        log = get_logger()
        log.info(f"Starting {cfg.mode.value} campaign: n = {cfg.n}, trials = {cfg.trials}, seed = {cfg.seed}, "
                 f"spread = {cfg.spread}, blocks = {cfg.blocks}, threads = {cfg.threads}.")
        start = time.perf_counter()

        summaries: list[CampaignSummary | BaseException | None] = [None] * cfg.blocks
        with TrialCsvWriter(self.csv_path, csv_header(cfg)) as sink:
            if cfg.threads == 1 or cfg.blocks == 1:
                for block in range(cfg.blocks):
                    summaries[block], rows = block_fn(cfg, block)
                    sink.submit(block, rows)
            else:
                anyio.run(self._run_blocks, cfg, block_fn, summaries, sink)
                failed = next((s for s in summaries if isinstance(s, BaseException)), None)
                if failed is not None:
                    raise failed

        summary = reduce(CampaignSummary.merge, summaries)
        summary = summary.model_copy(update={"wall_time": time.perf_counter() - start})

        log.info(f"Campaign done in {summary.wall_time:.2f}s: premises held in {summary.premises_hold_count} of "
                 f"{summary.trials_run} trials, {len(summary.violations)} violation(s), "
                 f"{summary.borderline_count} borderline.")
        if summary.borderline_count:
            log.warning(f"{summary.borderline_count} premise-holding trial(s) had negative conclusion margins "
                        f"inside the violation dead zone.")
        return summary

    async def _run_blocks(self, cfg: CampaignConfig, block_fn: Callable[[CampaignConfig, int], BlockResult],
                          summaries: list, sink: TrialCsvWriter):
        limiter = anyio.CapacityLimiter(cfg.threads)

        async def run_block(block: int):
            try:
                summaries[block], rows = await to_thread.run_sync(block_fn, cfg, block, limiter=limiter)
                # back on the event loop thread, so submissions never interleave
                sink.submit(block, rows)
            except Exception as e:
                # kept in place of the summary, re-raised unwrapped once the task group is done
                get_logger().error(f"Campaign block {block} failed: {e}.\n{traceback.format_exc()}")
                summaries[block] = e

        async with anyio.create_task_group() as tg:
            for block in range(cfg.blocks):
                tg.start_soon(run_block, block)

    def _tuple_block(self, cfg: CampaignConfig, block: int) -> BlockResult:
        rng = block_rng(cfg.seed, block)
        trials = cfg.block_range(block)
        count, n = len(trials), cfg.n

        if cfg.mode == CampaignMode.THEOREM3:
            ly, la = premise_logs(rng, cfg.spread, count, cfg.premise_attempts)
        else:
            ly, la = equal_product_logs(rng, n, cfg.spread, count)
        y, a = np.exp(ly), np.exp(la)

        ey, ea = elem_sym_rows(y), elem_sym_rows(a)
        margins = ey[:, 1:n] - ea[:, 1:n]
        scales = np.maximum(np.abs(ey[:, 1:n]), np.abs(ea[:, 1:n]))
        defects = (ey[:, n] - ea[:, n]) / np.maximum(np.abs(ey[:, n]), np.abs(ea[:, n]))
        lhs, rhs = np.sum(np.log(y) ** 2, axis=1), np.sum(np.log(a) ** 2, axis=1)
        conclusion = lhs - rhs
        conclusion_scale = np.maximum(1.0, np.maximum(lhs, rhs))

        equal = np.abs(defects) <= self.tolerances.equality
        premises = equal & np.all(margins >= -self.tolerances.hypothesis * scales, axis=1)
        strict = equal & np.all(margins > cfg.violation_tol * scales, axis=1)
        failing = conclusion < -cfg.violation_tol * conclusion_scale
        violation = strict & failing
        borderline = premises & failing & ~strict

        violations = []
        for i in np.flatnonzero(violation):
            violations.append(TrialRecord(
                trial_index=trials[i], y=y[i].tolist(), a=a[i].tolist(), hypothesis_margins=margins[i].tolist(),
                eq_defect=float(defects[i]), premises_hold=True, conclusion_margin=float(conclusion[i]),
                violation=True, violation_tol=cfg.violation_tol, conclusion_scale=float(conclusion_scale[i]),
                y_hex=to_hex(y[i]), a_hex=to_hex(a[i])))

        summary = CampaignSummary(
            config=cfg,
            trials_run=count,
            premises_hold_count=int(np.count_nonzero(premises)),
            borderline_count=int(np.count_nonzero(borderline)),
            violations=violations,
            min_conclusion_margin_over_premise_holding=float(np.min(conclusion[premises])) if premises.any() else None,
        )
        rows = []
        if self.csv_path:
            rows = [[trials[i], bool(premises[i]), *margins[i].tolist(), float(defects[i]), float(conclusion[i]),
                     bool(violation[i])] for i in range(count)]
        return summary, rows

    def _optimality_block(self, cfg: CampaignConfig, block: int) -> BlockResult:
        log = get_logger()
        rng = block_rng(cfg.seed, block)
        summary = CampaignSummary(config=cfg)
        rows = []

        for trial in cfg.block_range(block):
            z = random_invertible(rng, cfg.spread)
            u_p, h = polar(z)
            ref = frobenius_sq(log_spd(h))
            slack = cfg.optimality_tol * max(1.0, ref)

            rotations = random_rotations(rng, cfg.rot_samples)
            logs, admissible = principal_log_batch(np.swapaxes(rotations, 1, 2) @ z)
            values = np.sum(logs ** 2, axis=(1, 2))
            sym = 0.5 * (logs + np.swapaxes(logs, 1, 2))
            sym_values = np.sum(sym ** 2, axis=(1, 2))
            lowest = np.minimum(values, sym_values)

            evaluations = int(np.count_nonzero(admissible))
            skipped = cfg.rot_samples - evaluations
            value_gap = float(np.min(lowest[admissible]) - ref) if evaluations else None

            attained, attained_ok = principal_log_batch((u_p.entries.T @ z)[None])
            attainment_gap = abs(float(np.sum(attained[0] ** 2)) - ref) if attained_ok[0] else math.inf

            violations = []
            below = admissible & (lowest < ref - slack)
            if below.any():
                worst = int(np.argmin(np.where(below, lowest, np.inf)))
                violations.append(TrialRecord(
                    trial_index=trial, matrix=z.tolist(), rotation=rotations[worst].tolist(), premises_hold=True,
                    conclusion_margin=float(lowest[worst] - ref), violation=True, violation_tol=cfg.optimality_tol,
                    conclusion_scale=max(1.0, ref), matrix_hex=to_hex(z.flat)))
                log.error(f"Optimality trial {trial}: value {lowest[worst]!r} below reference {ref!r}.")
            if attainment_gap > slack:
                violations.append(TrialRecord(
                    trial_index=trial, matrix=z.tolist(), rotation=u_p.to_list(), premises_hold=True,
                    conclusion_margin=-attainment_gap, violation=True, violation_tol=cfg.optimality_tol,
                    conclusion_scale=max(1.0, ref), attainment=True, matrix_hex=to_hex(z.flat)))
                log.error(f"Optimality trial {trial}: polar factor misses the reference by {attainment_gap!r}.")

            low_coverage = skipped > LOW_COVERAGE_SKIP_RATE * cfg.rot_samples
            if low_coverage:
                log.warning(f"Optimality trial {trial}: {skipped} of {cfg.rot_samples} rotations had no principal "
                            f"logarithm.")

            summary = summary.merge(CampaignSummary(
                config=cfg, trials_run=1, premises_hold_count=1, violations=violations,
                evaluations=evaluations, skipped=skipped, low_coverage_trials=[trial] if low_coverage else [],
                max_attainment_gap=attainment_gap, min_value_gap=value_gap))
            if self.csv_path:
                rows.append([trial, evaluations, skipped, value_gap if value_gap is not None else "",
                             attainment_gap, low_coverage])
        return summary, rows

def run_conjecture_campaign(cfg: CampaignConfig, csv_path: str | None = None,
                            tolerances: ToleranceProperties | None = None) -> CampaignSummary:
    return CampaignRunner(tolerances, csv_path).run_conjecture_campaign(cfg)


def run_theorem3_campaign(cfg: CampaignConfig, csv_path: str | None = None,
                          tolerances: ToleranceProperties | None = None) -> CampaignSummary:
    return CampaignRunner(tolerances, csv_path).run_theorem3_campaign(cfg)


def run_optimality_campaign(cfg: CampaignConfig, csv_path: str | None = None,
                            tolerances: ToleranceProperties | None = None) -> CampaignSummary:
    return CampaignRunner(tolerances, csv_path).run_optimality_campaign(cfg)


def replay_record(record: TrialRecord, tol: float = 1e-12, optimality_tol: float = 1e-8,
                  ) -> tuple[bool, HypothesisReport | None]:
    """Re-verifies a serialized violation record, from its hex encodings when present.

    Returns (confirmed, report): for tuple records the report of the elementary-symmetric
    checker, for optimality records None. Attainment records are confirmed when the stored
    rotation still misses the reference value by more than the slack, in either direction.
    """

    if record.matrix is not None:
        z = np.array(from_hex(record.matrix_hex), dtype=float).reshape(3, 3) if record.matrix_hex \
            else np.array(record.matrix, dtype=float)
        _, h = polar(z)
        ref = frobenius_sq(log_spd(h))
        q = np.array(record.rotation, dtype=float)
        slack = optimality_tol * max(1.0, ref)
        logs, admissible = principal_log_batch((q.T @ z)[None])
        if record.attainment:
            return bool(not admissible[0] or abs(float(np.sum(logs[0] ** 2)) - ref) > slack), None
        if not admissible[0]:
            return False, None
        value = min(float(np.sum(logs[0] ** 2)), float(np.sum((0.5 * (logs[0] + logs[0].T)) ** 2)))
        return value < ref - slack, None

    if record.y is None or record.a is None:
        raise ArgumentError(f"trial record {record.trial_index} carries neither tuples nor a matrix")
    y = from_hex(record.y_hex) if record.y_hex else record.y
    a = from_hex(record.a_hex) if record.a_hex else record.a
    report = check_elem_sym(y, a, tol)
    return report.theorem_contradicted, report
