"""cli.py: Subcommand handlers of the `ssli` command line.

Each handler takes the parsed arguments and the loaded properties, prints its
report to stdout in the requested format and returns the process exit code.
Errors escape as SsliError subclasses; `main` turns them into their codes.
"""

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel, ValidationError

from .core import CHECKERS, scan_lemma_grid
from .logger import get_logger
from .matlog import MATRIX_CHECKERS, Mat, dev3, geodesic_dist_iso_sq, hencky, log_spd, matrix_exp, polar
from .properties import SsliProperties
from .schema import (CampaignConfig, CampaignMode, CampaignSummary, FileAccessError, Formulation,
                     HypothesisReport, InputNotFoundError, InputParseError, LemmaScanReport, UsageError)
from .search import CampaignRunner, PinnedCase, pinned_counterexamples
from .utils import format_number

TOOL_NAME = "ssli-verifier"

EXIT_OK = 0
EXIT_THEOREM_CONTRADICTED = 1
EXIT_HYPOTHESES_FAIL = 2
EXIT_CONJECTURE_FINDING = 3
# unexpected failure inside the tool, as opposed to a mathematical outcome
EXIT_INTERNAL_ERROR = 70

# premise-holding share below which the theorem3 sampler is reported as ineffective
MIN_PREMISE_RATE = 0.2

FORMATS = ("table", "json", "csv")
MATRIX_ACTIONS = ("log", "polar", "hencky", "geodesic", "dev3", "exp")


def tool_version() -> str:
    from importlib.metadata import PackageNotFoundError, version

    try:
        return version(TOOL_NAME)
    except PackageNotFoundError:
        return "0.0.0+unknown"


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser raising UsageError instead of exiting with status 2."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


class VerifyCase(BaseModel):
    """One verify input: a tuple or matrix pair, with its formulation when the input names one."""

    formulation: Formulation | None = None
    left: list[float] | list[list[float]]
    right: list[float] | list[list[float]]


def read_source(source: str) -> str:
    """Text of an input given inline, as a file path, or as '-' for stdin."""

    if source == "-":
        return sys.stdin.read()
    if source.lstrip().startswith(("[", "{")):
        return source
    if not os.path.exists(source):
        raise InputNotFoundError(f"Input file {source} does not exist")
    try:
        with open(source, "r", encoding="utf-8") as file:
            return file.read()
    except UnicodeDecodeError as e:
        raise InputParseError(f"Input file {source} is not UTF-8 text: {e}")
    except OSError as e:
        raise FileAccessError(f"Cannot read input file {source}: {e}")


def parse_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputParseError(f"Malformed JSON in {what}: {e}")


def load_cases(args: argparse.Namespace) -> list[VerifyCase]:
    """Verify inputs from --left/--right or --input.

    --input accepts a [left, right] pair, a {formulation, left, right} object, a list of
    such objects, or the JSON report of `counterexamples` (its `result` is unwrapped).
    """

    if args.input is not None:
        if args.left is not None or args.right is not None:
            raise UsageError("verify takes either --input or --left/--right, not both")
        data = parse_json(read_source(args.input), "verify input")
        if isinstance(data, dict) and "result" in data:
            data = data["result"]
        if isinstance(data, list) and len(data) == 2 and all(isinstance(side, list) for side in data):
            data = {"left": data[0], "right": data[1]}
        items = data if isinstance(data, list) else [data]
    elif args.left is not None and args.right is not None:
        items = [{"left": parse_json(args.left, "--left"), "right": parse_json(args.right, "--right")}]
    else:
        raise UsageError("verify needs --input, or both --left and --right")

    try:
        cases = [VerifyCase.model_validate(item) for item in items]
    except ValidationError as e:
        raise InputParseError(f"Verify input has the wrong shape: {e}")

    if args.formulation is not None:
        cases = [case.model_copy(update={"formulation": Formulation(args.formulation)}) for case in cases]
    for i, case in enumerate(cases):
        if case.formulation is None:
            raise UsageError(f"verify input {i} names no formulation, pass --formulation")
    return cases


def _tolerances(args: argparse.Namespace, properties: SsliProperties) -> tuple[float, float]:
    tol = properties.tolerances.hypothesis if getattr(args, "tol", None) is None else args.tol
    eq_tol = properties.tolerances.equality if getattr(args, "eq_tol", None) is None else args.eq_tol
    if tol < 0 or eq_tol < 0:
        raise UsageError("tolerances must be non-negative")
    return tol, eq_tol


def _echo(properties: SsliProperties, seed: int | None = None, **overrides) -> dict:
    tolerances = properties.tolerances.model_dump()
    tolerances.update({k: v for k, v in overrides.items() if v is not None})
    return {"tool": TOOL_NAME, "version": tool_version(), "config": properties.source,
            "tolerances": tolerances, "seed": seed}


def _echo_lines(echo: dict) -> list[str]:
    tolerances = ", ".join(f"{k}={v!r}" for k, v in echo["tolerances"].items())
    lines = [f"# {echo['tool']} {echo['version']}", f"# tolerances: {tolerances}"]
    if echo["seed"] is not None:
        lines.append(f"# seed: {echo['seed']}")
    if echo["config"]:
        lines.append(f"# config: {echo['config']}")
    return lines


def emit(fmt: str, echo: dict, result: Any, table: Callable[[], list[str]],
         rows: Callable[[], list[list]]) -> None:
    """Prints a result: JSON envelope, human table or CSV, each starting with the echo."""

    if fmt == "json":
        print(json.dumps({**echo, "result": result}, indent=2, sort_keys=False))
        return

    out = io.StringIO()
    out.write("\n".join(_echo_lines(echo)) + "\n")
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerows(rows())
    else:
        out.write("\n".join(table()) + "\n")
    sys.stdout.write(out.getvalue())


def _fmt_list(values: list[float]) -> str:
    return "[" + ", ".join(format_number(v) for v in values) + "]"


def _fmt_matrix(m: np.ndarray | list) -> list[str]:
    return ["  [" + ", ".join(f"{format_number(float(v)):>12}" for v in row) + "]" for row in np.asarray(m)]


def _report_lines(report: HypothesisReport) -> list[str]:
    lines = [f"formulation:        {report.formulation.value}",
             f"hypothesis margins: {_fmt_list(report.margins)}",
             f"equality defects:   {_fmt_list(report.equality_defects)}"]
    if report.derived_margins:
        lines.append(f"derived margins:    {_fmt_list(report.derived_margins)}")
    lines += [f"hypotheses hold:    {format_number(report.hypotheses_hold)}",
              f"conclusion:         {format_number(report.conclusion_lhs)} vs {format_number(report.conclusion_rhs)}"
              f" (margin {format_number(report.conclusion_margin)})",
              f"conclusion holds:   {format_number(report.conclusion_holds)}"]
    lines += [f"note: {note}" for note in report.notes]
    if report.theorem_contradicted:
        lines.append("!!! THEOREM CONTRADICTED: hypotheses hold but the conclusion fails")
    return lines


def _verify_exit_code(reports: list[HypothesisReport]) -> int:
    if any(r.theorem_contradicted for r in reports):
        return EXIT_THEOREM_CONTRADICTED
    if not all(r.hypotheses_hold for r in reports):
        return EXIT_HYPOTHESES_FAIL
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, properties: SsliProperties) -> int:
    log = get_logger()
    tol, eq_tol = _tolerances(args, properties)

    reports = []
    for case in load_cases(args):
        checker = CHECKERS.get(case.formulation) or MATRIX_CHECKERS[case.formulation]
        log.debug(f"Verifying {case.formulation.value}: {case.left} against {case.right}.")
        report = checker(case.left, case.right, tol, eq_tol)
        if report.theorem_contradicted:
            log.error(f"Theorem contradicted for {case.formulation.value}: {case.left} against {case.right}, "
                      f"conclusion margin {report.conclusion_margin!r}.")
        reports.append(report)

    def table() -> list[str]:
        lines = []
        for i, report in enumerate(reports):
            if len(reports) > 1:
                lines.append(f"--- case {i}")
            lines += _report_lines(report)
        return lines

    def rows() -> list[list]:
        header = ["case", "formulation", "hypotheses_hold", "margins", "equality_defects", "conclusion_lhs",
                  "conclusion_rhs", "conclusion_margin", "conclusion_holds"]
        return [header] + [[i, r.formulation.value, r.hypotheses_hold, ";".join(map(repr, r.margins)),
                            ";".join(map(repr, r.equality_defects)), repr(r.conclusion_lhs), repr(r.conclusion_rhs),
                            repr(r.conclusion_margin), r.conclusion_holds] for i, r in enumerate(reports)]

    result = [r.model_dump(mode="json") for r in reports]
    emit(args.format, _echo(properties, hypothesis=tol, equality=eq_tol), result[0] if len(result) == 1 else result,
         table, rows)
    return _verify_exit_code(reports)


def cmd_lemma_scan(args: argparse.Namespace, properties: SsliProperties) -> int:
    defaults = properties.lemma_scan
    tol = defaults.tolerance if args.tol is None else args.tol
    report: LemmaScanReport = scan_lemma_grid(
        r_min=defaults.r_min if args.r_min is None else args.r_min,
        r_max=defaults.r_max if args.r_max is None else args.r_max,
        r_steps=defaults.r_steps if args.r_steps is None else args.r_steps,
        phi_steps=defaults.phi_steps if args.phi_steps is None else args.phi_steps,
        tol=tol,
        fd_check=defaults.fd_check or args.fd_check,
    )

    def at(point) -> str:
        return f"(r={format_number(point.r)}, phi={format_number(point.phi)})"

    def table() -> list[str]:
        lines = [f"grid:               r in [{format_number(report.r_min)}, {format_number(report.r_max)}], "
                 f"{report.r_steps} x {report.phi_steps + 1} points",
                 f"max F:              {format_number(report.max_F)} at {at(report.max_F_at)}",
                 f"min dh/dr:          {format_number(report.min_dh_dr)} at {at(report.min_dh_dr_at)}",
                 f"max dF/dr:          {format_number(report.max_dF_dr)} at {at(report.max_dF_dr_at)}",
                 f"h not decreasing:   {report.h_monotonicity_violations} adjacent pairs"]
        if report.max_fd_rel_error is not None:
            lines.append(f"max FD rel. error:  {format_number(report.max_fd_rel_error)}")
        lines.append(f"F identity error:   {format_number(report.max_identity_error)}")
        lines += [f"F <= tol:           {format_number(report.F_claim_holds)}",
                  f"dh/dr > -tol:       {format_number(report.dh_dr_claim_holds)}",
                  f"F identity holds:   {format_number(report.identity_holds)}"]
        return lines

    def rows() -> list[list]:
        dump = report.model_dump(mode="json")
        flat = {k: v for k, v in dump.items() if not isinstance(v, dict)}
        for k in ("max_F_at", "min_dh_dr_at", "max_dF_dr_at"):
            flat[f"{k}_r"], flat[f"{k}_phi"] = dump[k]["r"], dump[k]["phi"]
        return [list(flat.keys()), list(flat.values())]

    emit(args.format, _echo(properties, lemma_scan=tol), report.model_dump(mode="json"), table, rows)
    return EXIT_OK if report.passed else EXIT_THEOREM_CONTRADICTED


def cmd_counterexamples(args: argparse.Namespace, properties: SsliProperties) -> int:
    tol, _ = _tolerances(args, properties)
    cases: list[PinnedCase] = pinned_counterexamples(tol)

    def table() -> list[str]:
        lines = []
        for case in cases:
            lines.append(f"--- {case.name}: {case.description} [{'match' if case.matches else 'MISMATCH'}]")
            lines.append(f"left:  {_fmt_list(case.left)}")
            lines.append(f"right: {_fmt_list(case.right)}")
            lines += _report_lines(case.report)
            for key, value in case.observed.extra.items():
                lines.append(f"{key}: {format_number(value)}")
            for value in case.values:
                lines.append(f"{value.name}: computed {format_number(value.computed, 12)}, "
                             f"stated {format_number(value.stated, 12)}")
            lines += [f"note: {note}" for note in case.notes]
        return lines

    def rows() -> list[list]:
        out = [["case", "value", "stated", "computed", "matches"]]
        for case in cases:
            out += [[case.name, v.name, repr(v.stated), repr(v.computed), v.matches] for v in case.values]
        return out

    mismatched = [case.name for case in cases if not case.matches]
    if mismatched:
        get_logger().error(f"Pinned examples deviate from their stated pattern: {mismatched}.")
    emit(args.format, _echo(properties, hypothesis=tol), [case.model_dump(mode="json") for case in cases], table, rows)
    return EXIT_OK if not mismatched else EXIT_THEOREM_CONTRADICTED


def campaign_config(args: argparse.Namespace, properties: SsliProperties) -> CampaignConfig:
    """CampaignConfig from the config-file campaign section overridden by the sample flags."""

    values = properties.campaign.model_dump()
    for name in ("mode", "n", "trials", "seed", "spread", "block_size", "threads", "rot_samples",
                 "premise_attempts"):
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    values["violation_tol"] = properties.tolerances.violation
    values["optimality_tol"] = properties.tolerances.optimality
    try:
        return CampaignConfig(**values)
    except ValidationError as e:
        raise UsageError(f"Invalid campaign configuration: {e}")


def _sample_exit_code(summary: CampaignSummary) -> int:
    if not summary.has_violations:
        return EXIT_OK
    return EXIT_CONJECTURE_FINDING if summary.is_finding else EXIT_THEOREM_CONTRADICTED


def cmd_sample(args: argparse.Namespace, properties: SsliProperties) -> int:
    log = get_logger()
    cfg = campaign_config(args, properties)
    summary = CampaignRunner(properties.tolerances, args.csv).run(cfg)

    if cfg.mode == CampaignMode.THEOREM3 and summary.premise_rate < MIN_PREMISE_RATE:
        log.warning(f"Premises held in only {summary.premise_rate:.1%} of the trials.")
    if summary.low_coverage_trials:
        log.warning(f"{len(summary.low_coverage_trials)} trial(s) had low rotation coverage.")

    def table() -> list[str]:
        lines = [f"mode:               {cfg.mode.value} (n = {cfg.n}, spread = {format_number(cfg.spread)})",
                 f"trials:             {summary.trials_run}",
                 f"premises held:      {summary.premises_hold_count} ({format_number(summary.premise_rate)})",
                 f"borderline:         {summary.borderline_count}",
                 f"violations:         {len(summary.violations)}",
                 f"min margin:         {format_number(summary.min_conclusion_margin_over_premise_holding)}"]
        if cfg.mode == CampaignMode.OPTIMALITY:
            lines += [f"evaluations:        {summary.evaluations} ({summary.skipped} skipped, "
                      f"rate {format_number(summary.skip_rate)})",
                      f"min value gap:      {format_number(summary.min_value_gap)}",
                      f"max attainment gap: {format_number(summary.max_attainment_gap)}",
                      f"low coverage:       {summary.low_coverage_trials}"]
        lines.append(f"wall time:          {summary.wall_time:.3f}s")
        if summary.is_finding:
            lines.append("*** CONJECTURE FINDING: premise-holding pair with failing conclusion")
        elif summary.has_violations:
            lines.append("!!! THEOREM CONTRADICTED: see the violation records in the JSON output")
        return lines

    def rows() -> list[list]:
        dump = summary.model_dump(mode="json", exclude={"config", "violations", "low_coverage_trials"})
        return [list(dump.keys()), list(dump.values())]

    emit(args.format, _echo(properties, seed=cfg.seed), summary.model_dump(mode="json"), table, rows)
    return _sample_exit_code(summary)


def run_matrix_action(action: str, m: Mat) -> dict:
    """Result of one `matrix` action as a JSON-ready dict."""

    if action == "log":
        return {"log": log_spd(m.entries).to_list()}
    if action == "polar":
        u, h = polar(m)
        z = m.entries
        residual = float(np.linalg.norm(z - u.entries @ h.entries) / np.linalg.norm(z))
        orthogonality = float(np.linalg.norm(u.entries.T @ u.entries - np.eye(m.dim)))
        return {"U": u.to_list(), "H": h.to_list(), "residual": residual, "orthogonality": orthogonality}
    if action == "hencky":
        return {"hencky": hencky(m).to_list()}
    if action == "geodesic":
        return {"geodesic_dist_iso_sq": geodesic_dist_iso_sq(m)}
    if action == "dev3":
        return {"dev3": dev3(m).to_list()}
    if action == "exp":
        return {"exp": matrix_exp(m).to_list()}
    raise UsageError(f"unknown matrix action '{action}', expected one of {', '.join(MATRIX_ACTIONS)}")


def cmd_matrix(args: argparse.Namespace, properties: SsliProperties) -> int:
    m = Mat.from_json(read_source(args.input))
    result = run_matrix_action(args.action, m)

    def table() -> list[str]:
        lines = []
        for key, value in result.items():
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines += _fmt_matrix(value)
            else:
                lines.append(f"{key}: {format_number(value, 12)}")
        return lines

    def rows() -> list[list]:
        out = []
        for key, value in result.items():
            out += [[key, *map(repr, row)] for row in value] if isinstance(value, list) else [[key, repr(value)]]
        return out

    emit(args.format, _echo(properties), result, table, rows)
    return EXIT_OK
