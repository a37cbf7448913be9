"""Exact precedence probabilities for finite-support scenarios.

The joint outcome space is the product of the atom sets of all (m+1)*n
positions.  Outcomes are visited row-major: layer 0 (X) positions 1..n, then
Y_1, ..., Y_m, with the atom index of the last position varying fastest.
Atom values are converted to exact rationals (floats through their shortest
decimal repr, so ``0.1`` means 1/10) and both architectures are evaluated in
rational arithmetic; no comparison ever involves rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from redlab.distributions import finite_support
from redlab.errors import BudgetError
from redlab.systems import Realization, Scenario, evaluate_pair

DEFAULT_MAX_OUTCOMES = 10**7


@dataclass(frozen=True)
class ExactReport:
    p_gt: Fraction
    p_lt: Fraction
    p_eq: Fraction
    outcome_count: int
    digest: str


def exact_value(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def outcome_count(scenario: Scenario) -> int:
    return math.prod(len(finite_support(d)) for layer in scenario.layers() for d in layer)


def exact_sp(scenario: Scenario, max_outcomes: int = DEFAULT_MAX_OUTCOMES) -> ExactReport:
    supports = [finite_support(d) for layer in scenario.layers() for d in layer]
    count = math.prod(len(s) for s in supports)
    if count > max_outcomes:
        raise BudgetError(
            f"exact enumeration needs {count} outcomes, guard is {max_outcomes}",
            required=count, limit=max_outcomes,
        )

    # Integer weights over a per-position common denominator keep the inner
    # loop in int arithmetic; one Fraction division at the end.
    values, numerators, denominator = [], [], 1
    for atoms in supports:
        lcd = math.lcm(*(w.denominator for _, w in atoms))
        values.append([exact_value(v) for v, _ in atoms])
        numerators.append([w.numerator * (lcd // w.denominator) for _, w in atoms])
        denominator *= lcd

    n, m = scenario.n, scenario.m
    gt = lt = eq = 0
    for combo in itertools.product(*(range(len(s)) for s in supports)):
        weight = 1
        for pos, idx in enumerate(combo):
            weight *= numerators[pos][idx]
        lives = [values[pos][idx] for pos, idx in enumerate(combo)]
        realization = Realization(lives[:n], [lives[i * n:(i + 1) * n] for i in range(1, m + 1)])
        pair = evaluate_pair(scenario, realization)
        a, b = pair.a, pair.b
        if a > b:
            gt += weight
        elif b > a:
            lt += weight
        else:
            eq += weight

    return ExactReport(
        p_gt=Fraction(gt, denominator),
        p_lt=Fraction(lt, denominator),
        p_eq=Fraction(eq, denominator),
        outcome_count=count,
        digest=scenario.digest(),
    )
