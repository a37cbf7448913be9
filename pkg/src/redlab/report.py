"""JSON and CSV renderings of the three report types.

Keys and CSV column orders below are part of the public interface.  Floats
are written with Python's shortest round-trip repr; exact rationals as
``"num/den"`` strings.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from redlab import __version__
from redlab.oracle import ExactReport
from redlab.precedence import PrecedenceReport, Verdict
from redlab.statespace import CaseReport

TOOL = "redlab"

COMPARE_COLUMNS = (
    "n", "k", "m", "mode", "p_gt", "p_lt", "p_eq",
    "ci_gt_lo", "ci_gt_hi", "ci_lt_lo", "ci_lt_hi", "verdict", "seed",
    "n_trials", "wins_a", "wins_b", "ties", "tie_tol", "alpha", "confidence",
    "p_value", "scenario_digest", "config_digest", "version",
)
SWEEP_COLUMNS = COMPARE_COLUMNS
ORACLE_COLUMNS = (
    "n", "k", "m", "mode", "p_gt", "p_lt", "p_eq", "outcome_count",
    "scenario_digest", "config_digest", "version",
)
VERIFY_COLUMNS = (
    "mode", "n", "k", "m", "assignment_count", "infeasible_cases", "feasible_cases",
    "sys_over_comp_count", "comp_over_sys_count", "comp_over_sys_first",
    "partition_check", "multi_live_count", "claims_hold",
)

INCONCLUSIVE_NOTE = (
    "'inconclusive' is not an outcome of the precedence order itself; it marks "
    "a sample that neither rejects symmetry nor pins the win share near 1/2"
)


def rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def precedence_record(report: PrecedenceReport, scenario, config_digest: str) -> dict:
    t = report.tally
    gt, lt, eq = report.exact_probabilities
    return {
        "n": scenario.n,
        "k": scenario.k,
        "m": scenario.m,
        "mode": scenario.mode.value,
        "p_gt": report.p_gt,
        "p_lt": report.p_lt,
        "p_eq": report.p_eq,
        "p_exact": {"gt": rational(gt), "lt": rational(lt), "eq": rational(eq)},
        "ci_gt": list(report.ci_gt),
        "ci_lt": list(report.ci_lt),
        "verdict": report.verdict.value,
        "seed": report.seed,
        "n_trials": t.n_trials,
        "wins_a": t.wins_a,
        "wins_b": t.wins_b,
        "ties": t.ties,
        "tie_tol": report.tie_tol,
        "alpha": report.alpha,
        "confidence": report.confidence,
        "p_value": report.p_value,
        "scenario_digest": report.digest,
        "config_digest": config_digest,
        "version": report.version,
    }


def _flat_precedence(record: dict) -> dict:
    flat = dict(record)
    flat["ci_gt_lo"], flat["ci_gt_hi"] = record["ci_gt"]
    flat["ci_lt_lo"], flat["ci_lt_hi"] = record["ci_lt"]
    return flat


def compare_json(report: PrecedenceReport, scenario, config_digest: str) -> str:
    body = {"tool": TOOL, "command": "compare", **precedence_record(report, scenario, config_digest),
            "scenario": scenario.to_dict()}
    if report.verdict is Verdict.INCONCLUSIVE:
        body["verdict_note"] = INCONCLUSIVE_NOTE
    return dumps(body)


def compare_csv(report: PrecedenceReport, scenario, config_digest: str) -> str:
    return to_csv(COMPARE_COLUMNS, [_flat_precedence(precedence_record(report, scenario, config_digest))])


def sweep_json(records: list[dict], config_digest: str) -> str:
    return dumps({"tool": TOOL, "command": "sweep", "version": __version__,
                  "config_digest": config_digest, "cells": records})


def sweep_csv(records: list[dict]) -> str:
    return to_csv(SWEEP_COLUMNS, [_flat_precedence(r) for r in records])


def oracle_record(report: ExactReport, scenario, config_digest: str) -> dict:
    return {
        "n": scenario.n,
        "k": scenario.k,
        "m": scenario.m,
        "mode": scenario.mode.value,
        "p_gt": rational(report.p_gt),
        "p_lt": rational(report.p_lt),
        "p_eq": rational(report.p_eq),
        "outcome_count": report.outcome_count,
        "scenario_digest": report.digest,
        "config_digest": config_digest,
        "version": __version__,
    }


def oracle_json(report: ExactReport, scenario, config_digest: str) -> str:
    return dumps({"tool": TOOL, "command": "oracle", **oracle_record(report, scenario, config_digest),
                  "scenario": scenario.to_dict()})


def oracle_csv(report: ExactReport, scenario, config_digest: str) -> str:
    return to_csv(ORACLE_COLUMNS, [oracle_record(report, scenario, config_digest)])


def _first(report: CaseReport, codes) -> str | None:
    return report.decode(codes[:1])[0].render() if len(codes) else None


def case_record(report: CaseReport) -> dict:
    soc = report.sys_over_comp_codes
    cos = report.comp_over_sys_codes
    violations = report.violations()
    return {
        "mode": report.mode.value,
        "n": report.spec.n,
        "k": report.spec.k,
        "m": report.m,
        "assignment_count": report.assignment_count,
        "cases": [
            {"label": c.label, "branches": c.branch_count, "feasible": c.feasible,
             "witness": c.witness.render() if c.witness else None}
            for c in report.cases
        ],
        "sys_over_comp_count": int(len(soc)),
        "sys_over_comp_first": _first(report, soc),
        "comp_over_sys_count": int(len(cos)),
        "comp_over_sys_first": _first(report, cos),
        "partition_check": report.partition_check,
        "multi_live_count": report.multi_live_count,
        "notes": list(report.notes),
        "violations": violations,
        "claims_hold": not violations,
    }


def verify_json(records: list[dict], grid: dict, summary: str) -> str:
    return dumps({"tool": TOOL, "command": "verify", "version": __version__,
                  "grid": grid, "summary": summary, "reports": records})


def verify_csv(records: list[dict]) -> str:
    rows = []
    for r in records:
        row = dict(r)
        row["infeasible_cases"] = ";".join(c["label"] for c in r["cases"] if not c["feasible"])
        row["feasible_cases"] = ";".join(c["label"] for c in r["cases"] if c["feasible"])
        rows.append(row)
    return to_csv(VERIFY_COLUMNS, rows)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _cell(row.get(c)) for c in columns})
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else v
