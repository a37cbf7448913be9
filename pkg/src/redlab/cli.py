"""Command-line front end.

Subcommands::

    redlab compare --config scenario.yaml [--trials N] [--seed S] [--threads T]
    redlab oracle  --config scenario.yaml
    redlab verify  [--n-max 5] [--m-max 3] [--modes active,cold]
    redlab sweep   --config grid.yaml [--figure cells.png]

Exit codes: 0 success, 1 configuration or validation error, 2 enumeration
guard exceeded, 3 ``verify`` found a violated claim.  Reports go to stdout or
``--out``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from redlab import __version__, report
from redlab.config import RunConfig, parse_config
from redlab.errors import BudgetError, RedlabError, ValidationError
from redlab.oracle import exact_sp
from redlab.precedence import compare
from redlab.statespace import sweep as statespace_sweep
from redlab.systems import Mode

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_BUDGET = 2
EXIT_VIOLATION = 3

ALL_CLAIMS_HOLD = "ALL CLAIMS HOLD"


def _common(parser: argparse.ArgumentParser, config_required: bool) -> None:
    parser.add_argument("--config", required=config_required, metavar="PATH",
                        help="scenario configuration document (YAML or JSON)")
    parser.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), help="report format")
    parser.add_argument("--threads", type=int, default=1, metavar="T",
                        help="worker cap; never changes the output")


def _mc_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--trials", type=int, metavar="N")
    parser.add_argument("--seed", type=int, metavar="S")
    parser.add_argument("--alpha", type=float, metavar="A")
    parser.add_argument("--confidence", type=float, metavar="C")
    parser.add_argument("--tie-tol", type=float, metavar="TOL")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="redlab",
        description="Component-level vs system-level redundancy for k-out-of-n systems.",
    )
    parser.add_argument("--version", action="version", version=f"redlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="coupled Monte Carlo precedence estimate")
    _common(p, True)
    _mc_flags(p)

    p = sub.add_parser("oracle", help="exact probabilities for finite-support scenarios")
    _common(p, True)

    p = sub.add_parser("verify", help="exhaustive replay of the state-vector case analysis")
    _common(p, False)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--modes", default="active,cold", help="comma-separated subset of active,cold")

    p = sub.add_parser("sweep", help="Monte Carlo grid over (n, k, m)")
    _common(p, True)
    _mc_flags(p)
    p.add_argument("--figure", metavar="PATH", help="also render the cells as a bar chart")
    return parser


def _load(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError("--config", f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)


def _apply_flags(cfg: RunConfig, args) -> RunConfig:
    overrides = {}
    for flag, name in (("trials", "trials"), ("seed", "seed"), ("alpha", "alpha"),
                       ("confidence", "confidence"), ("tie_tol", "tie_tol")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[name] = value
    if "trials" in overrides and overrides["trials"] < 1:
        raise ValidationError("--trials", "must be a positive integer")
    for name in ("alpha", "confidence"):
        if name in overrides and not 0.0 < overrides[name] < 1.0:
            raise ValidationError(f"--{name}", "must lie in (0, 1)")
    if "tie_tol" in overrides and overrides["tie_tol"] < 0:
        raise ValidationError("--tie-tol", "must be nonnegative")
    return replace(cfg, **overrides)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text)


def _cmd_compare(args, cfg: RunConfig) -> int:
    if cfg.scenario is None:
        raise ValidationError("n", "compare needs a scenario (n, k, m, mode, x, y)")
    rep = compare(cfg.scenario, cfg.trials, cfg.seed, cfg.tie_tol, cfg.alpha, cfg.confidence,
                  workers=args.threads)
    fmt = args.format or cfg.output_format or "json"
    render = report.compare_json if fmt == "json" else report.compare_csv
    _emit(render(rep, cfg.scenario, cfg.digest()), args.out)
    return EXIT_OK


def _cmd_oracle(args, cfg: RunConfig) -> int:
    if cfg.scenario is None:
        raise ValidationError("n", "oracle needs a scenario (n, k, m, mode, x, y)")
    rep = exact_sp(cfg.scenario, cfg.oracle_max_outcomes)
    fmt = args.format or cfg.output_format or "json"
    render = report.oracle_json if fmt == "json" else report.oracle_csv
    _emit(render(rep, cfg.scenario, cfg.digest()), args.out)
    return EXIT_OK


def _cmd_verify(args, cfg: RunConfig) -> int:
    if args.n_max < 1 or args.m_max < 1:
        raise ValidationError("--n-max/--m-max", "must be positive")
    try:
        modes = [Mode(s.strip().lower()) for s in args.modes.split(",") if s.strip()]
    except ValueError:
        raise ValidationError("--modes", f"expected a subset of active,cold, got {args.modes!r}") from None
    grid = {"n": [1, args.n_max], "m": [1, args.m_max], "modes": [m.value for m in modes]}
    records, summary = [], ALL_CLAIMS_HOLD
    for case_report in statespace_sweep(range(1, args.n_max + 1), range(1, args.m_max + 1), modes,
                                        cfg.max_enum_bits):
        record = report.case_record(case_report)
        records.append(record)
        if not record["claims_hold"] and summary == ALL_CLAIMS_HOLD:
            summary = (f"CLAIM VIOLATED mode={record['mode']} n={record['n']} k={record['k']} "
                       f"m={record['m']}: {record['violations'][0]}")
    fmt = args.format or cfg.output_format or "json"
    text = report.verify_json(records, grid, summary) if fmt == "json" else report.verify_csv(records)
    _emit(text, args.out)
    print(summary, file=sys.stderr)
    return EXIT_OK if summary == ALL_CLAIMS_HOLD else EXIT_VIOLATION


def _cmd_sweep(args, cfg: RunConfig) -> int:
    if cfg.sweep is None:
        raise ValidationError("sweep", "sweep needs a 'sweep' section with n, m, template")
    records = []
    for scenario in cfg.sweep.cells():
        rep = compare(scenario, cfg.trials, cfg.seed, cfg.tie_tol, cfg.alpha, cfg.confidence,
                      workers=args.threads)
        records.append(report.precedence_record(rep, scenario, cfg.digest()))
    fmt = args.format or cfg.output_format or "csv"
    text = report.sweep_json(records, cfg.digest()) if fmt == "json" else report.sweep_csv(records)
    _emit(text, args.out)
    if args.figure:
        from redlab.figures import plot_sweep

        plot_sweep(records, args.figure)
    return EXIT_OK


COMMANDS = {
    "compare": _cmd_compare,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def run_command(argv: list[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors, --help, --version
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    try:
        if args.threads < 1:
            raise ValidationError("--threads", "must be a positive integer")
        cfg = _apply_flags(_load(args.config), args)
        return COMMANDS[args.command](args, cfg)
    except BudgetError as exc:
        print(f"redlab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RedlabError, ValueError) as exc:
        print(f"redlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main(argv: list[str] | None = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
