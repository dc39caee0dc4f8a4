"""Command-line front end.

Subcommands: solve, verify, delta-curve, uniqueness, audit-space. Verdicts
(holds/fails/refuted uniqueness/failed axioms) never affect the exit status:
a run that completes exits 0 and puts the verdicts in its output, so
pipelines can tell "ran and refuted" from "could not run" (exit 2, input
error).

Identical invocations (including --seed) produce byte-identical JSON. Floats
serialize as shortest round-trip decimals; exact rationals as "p/q" strings.

COUPLED_FP_THREADS (optional, integer >= 1) caps internal parallelism. All
evaluation in this implementation is sequential with a deterministic
reduction order, which trivially respects any cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import conditions, uniqueness as uniq
from .errors import InputError
from .operators import check_mixed_monotone
from .problems import resolve_problem, sample_admissible_starts
from .solver import solve
from .spaces import audit_space

DEFAULT_EPS_GRID = (0.1, 1.0, 10.0)
UNIQUENESS_STARTS = 10


@dataclass
class RunConfig:
    command: str
    problem: str
    tol: float = 1e-10
    max_iter: int = 10000
    samples: int = 10000
    seed: int = 42
    eps_grid: tuple = DEFAULT_EPS_GRID
    output: str = ""
    format: str = "json"
    threads: int = 1

    def echo(self):
        return {
            "command": self.command,
            "problem": self.problem,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "samples": self.samples,
            "seed": self.seed,
            "eps_grid": list(self.eps_grid),
            "format": self.format,
        }


def _read_threads() -> int:
    raw = os.environ.get("COUPLED_FP_THREADS", "").strip()
    if not raw:
        return 1
    try:
        val = int(raw)
    except ValueError:
        raise InputError(f"COUPLED_FP_THREADS must be an integer, got {raw!r}")
    if val < 1:
        raise InputError("COUPLED_FP_THREADS must be >= 1")
    return val


def _parse_eps_grid(text: str):
    try:
        grid = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise InputError(f"bad --eps-grid {text!r}: {exc}")
    if not grid or any(not e > 0 for e in grid):
        raise InputError("--eps-grid must list positive numbers")
    return grid


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coupled-fp",
        description="Coupled fixed-point solves and contractive-condition audits "
                    "on partially ordered metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    command_help = {
        "solve": "run the pair-map iteration from the problem's default start",
        "verify": "check mixed monotonicity and the contractive conditions",
        "delta-curve": "estimate the largest workable delta per eps for the symmetric condition",
        "uniqueness": "multi-start probe for distinct coupled fixed points",
        "audit-space": "check the metric and order axioms of the problem's space",
    }
    for name, help_text in command_help.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--problem", required=True,
                       help="registry name (samet_example, linear(a,b,c), "
                            "finite_poset(path)) or a finite-problem .json path")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-iter", type=int, default=10000)
        p.add_argument("--samples", type=int, default=10000,
                       help="per-eps draw budget for banded checks; point budget elsewhere")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--eps-grid", default="0.1,1,10",
                       help="comma-separated positive eps values")
        p.add_argument("--output", default="",
                       help="base path for artifacts (BASE.json, plus BASE.csv "
                            "where a table is produced); stdout when omitted")
        p.add_argument("--format", choices=("csv", "json"), default="json",
                       help="with --output, also write the tabular artifact as CSV")
    return parser


def _config_from_args(args) -> RunConfig:
    if not args.tol > 0:
        raise InputError("--tol must be positive")
    if args.max_iter < 1:
        raise InputError("--max-iter must be >= 1")
    if args.samples < 1:
        raise InputError("--samples must be >= 1")
    return RunConfig(
        command=args.command,
        problem=args.problem,
        tol=args.tol,
        max_iter=args.max_iter,
        samples=args.samples,
        seed=args.seed,
        eps_grid=_parse_eps_grid(args.eps_grid),
        output=args.output,
        format=args.format,
        threads=_read_threads(),
    )


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(config: RunConfig, payload: dict, csv_writer=None):
    text = _dumps(payload)
    if config.output:
        with open(config.output + ".json", "w") as fh:
            fh.write(text)
        if csv_writer is not None:
            csv_writer(config.output + ".csv")
    else:
        sys.stdout.write(text)


def _delta_rule(eps):
    # default candidate: an eighth of eps; tight enough to hold on the
    # built-in contractive instances, wide enough to be falsifiable
    return eps / 8


def _cmd_solve(config: RunConfig, problem):
    trace = solve(problem.operator, problem.default_start, tol=config.tol,
                  max_iter=config.max_iter, require_admissible=True)
    payload = {
        "schema_version": 1,
        "config": config.echo(),
        "trace": trace.to_jsonable(),
    }
    _emit(config, payload, csv_writer=trace.write_csv)


def _verify_reports(config: RunConfig, problem):
    op = problem.operator
    reports = [check_mixed_monotone(op, samples=config.samples, seed=config.seed)]
    if op.lipschitz_data is not None:
        la, lb = op.lipschitz_data
        k_cand = 2.0 * max(la, lb)
        # probe just below 1 when the declared data admits no valid constant;
        # a failure there certifies no k < 1 is workable on these samples
        k = k_cand if k_cand < 1.0 else 1.0 - 2.0 ** -20
        rep = conditions.check_banach_k(op, k, samples=config.samples, seed=config.seed)
        rep.params["k_source"] = (
            "2*max(lipschitz_data)" if k_cand < 1.0 else "probe just below 1"
        )
        reports.append(rep)
    reports.append(conditions.check_samet(
        op, config.eps_grid, _delta_rule, samples=config.samples, seed=config.seed))
    reports.append(conditions.check_symmetric_mk(
        op, config.eps_grid, _delta_rule, samples=config.samples, seed=config.seed))
    reports.append(conditions.check_strict_contraction(
        op, samples=config.samples, seed=config.seed))
    return reports


def _cmd_verify(config: RunConfig, problem):
    reports = _verify_reports(config, problem)
    payload = {
        "schema_version": 1,
        "config": config.echo(),
        "delta_rule": "eps/8",
        "reports": [r.to_jsonable() for r in reports],
    }
    _emit(config, payload)


def _cmd_delta_curve(config: RunConfig, problem):
    curve = conditions.estimate_delta_curve(
        problem.operator, config.eps_grid, samples=config.samples, seed=config.seed)
    payload = {
        "schema_version": 1,
        "config": config.echo(),
        "curve": [[eps, dmax] for eps, dmax in curve],
    }

    def write_csv(path):
        import csv as _csv

        with open(path, "w", newline="") as fh:
            wr = _csv.writer(fh)
            wr.writerow(["eps", "delta_max"])
            for eps, dmax in curve:
                wr.writerow([repr(float(eps)), repr(float(dmax))])

    _emit(config, payload, csv_writer=write_csv if config.format == "csv" else None)


def _cmd_uniqueness(config: RunConfig, problem):
    starts = [problem.default_start]
    starts += sample_admissible_starts(problem, UNIQUENESS_STARTS, seed=config.seed)
    report = uniq.multi_start_uniqueness(
        problem.operator, starts, tol=config.tol, max_iter=config.max_iter,
        bound_search=problem.bound_search, seed=config.seed)
    payload = {
        "schema_version": 1,
        "config": config.echo(),
        "uniqueness": report.to_jsonable(),
    }
    _emit(config, payload)


def _cmd_audit_space(config: RunConfig, problem):
    report = audit_space(problem.space, samples=min(config.samples, 500),
                         seed=config.seed)
    payload = {
        "schema_version": 1,
        "config": config.echo(),
        "audit": report.to_jsonable(),
    }
    _emit(config, payload)


_COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "delta-curve": _cmd_delta_curve,
    "uniqueness": _cmd_uniqueness,
    "audit-space": _cmd_audit_space,
}


def run(config: RunConfig) -> int:
    """Execute one command. Returns the process exit status (0 completed,
    2 input error)."""
    try:
        problem = resolve_problem(config.problem)
        _COMMANDS[config.command](config, problem)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
