"""Coupled Monte Carlo estimate of the stochastic-precedence comparison.

Architecture A is component-level redundancy, B is system-level redundancy.
Each trial draws one realization and evaluates both architectures on it, so
the tally counts the events {A > B}, {B > A} and ties on the joint law.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import stats

from redlab import __version__
from redlab.distributions import sample_block
from redlab.errors import DomainError
from redlab.systems import Scenario, evaluate_pair_batch

# Multiple of the Philox block size; fixed so chunking never depends on workers.
CHUNK_TRIALS = 1 << 16
DEFAULT_ALPHA = 0.01
DEFAULT_CONFIDENCE = 0.95
# Half-width the (1 - alpha) interval for P(A wins | strict) must fit inside,
# around 1/2, before a non-rejection is called sp-equal.
DEFAULT_EQUIVALENCE_MARGIN = 0.01


class Verdict(str, enum.Enum):
    A_SP_GREATER = "A_sp_greater"
    B_SP_GREATER = "B_sp_greater"
    SP_EQUAL = "sp_equal"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Tally:
    n_trials: int
    wins_a: int
    wins_b: int
    ties: int

    def __post_init__(self):
        if self.n_trials < 1:
            raise DomainError("n_trials must be positive")
        if min(self.wins_a, self.wins_b, self.ties) < 0:
            raise DomainError("counts must be nonnegative")
        if self.wins_a + self.wins_b + self.ties != self.n_trials:
            raise DomainError("wins_a + wins_b + ties must equal n_trials")

    def __add__(self, other: "Tally") -> "Tally":
        return Tally(
            self.n_trials + other.n_trials,
            self.wins_a + other.wins_a,
            self.wins_b + other.wins_b,
            self.ties + other.ties,
        )

    @property
    def strict(self) -> int:
        return self.wins_a + self.wins_b


@dataclass(frozen=True)
class PrecedenceReport:
    tally: Tally
    ci_gt: tuple[float, float]
    ci_lt: tuple[float, float]
    verdict: Verdict
    p_value: float
    seed: int
    tie_tol: float
    alpha: float
    confidence: float
    digest: str
    version: str = __version__

    @property
    def exact_probabilities(self) -> tuple[Fraction, Fraction, Fraction]:
        t = self.tally
        return (
            Fraction(t.wins_a, t.n_trials),
            Fraction(t.wins_b, t.n_trials),
            Fraction(t.ties, t.n_trials),
        )

    @property
    def p_gt(self) -> float:
        return self.tally.wins_a / self.tally.n_trials

    @property
    def p_lt(self) -> float:
        return self.tally.wins_b / self.tally.n_trials

    @property
    def p_eq(self) -> float:
        return self.tally.ties / self.tally.n_trials

    @property
    def n_trials(self) -> int:
        return self.tally.n_trials


def _run_chunk(scenario: Scenario, seed: int, tie_tol: float, start: int, count: int) -> Tally:
    n, m = scenario.n, scenario.m
    x = np.empty((count, n))
    y = np.empty((count, m, n))
    for j, dist in enumerate(scenario.x_dists):
        x[:, j] = sample_block(dist, seed, 0, j + 1, start, count)
    for i, row in enumerate(scenario.y_dists):
        for j, dist in enumerate(row):
            y[:, i, j] = sample_block(dist, seed, i + 1, j + 1, start, count)
    a, b = evaluate_pair_batch(scenario, x, y)
    wins_a = int(np.count_nonzero(a > b + tie_tol))
    wins_b = int(np.count_nonzero(b > a + tie_tol))
    return Tally(count, wins_a, wins_b, count - wins_a - wins_b)


def run_trials(scenario: Scenario, n_trials: int, seed: int = 0, tie_tol: float = 0.0,
               workers: int = 1) -> Tally:
    """Classify ``n_trials`` coupled trials; the result is independent of ``workers``."""
    if not isinstance(n_trials, int) or n_trials < 1:
        raise DomainError(f"n_trials must be a positive integer, got {n_trials!r}")
    if not (tie_tol >= 0 and math.isfinite(tie_tol)):
        raise DomainError(f"tie_tol must be a nonnegative finite number, got {tie_tol!r}")
    chunks = [(s, min(CHUNK_TRIALS, n_trials - s)) for s in range(0, n_trials, CHUNK_TRIALS)]
    if workers <= 1 or len(chunks) == 1:
        parts = [_run_chunk(scenario, seed, tie_tol, s, c) for s, c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda sc: _run_chunk(scenario, seed, tie_tol, *sc), chunks))
    total = parts[0]
    for part in parts[1:]:
        total = total + part
    return total


def _z(confidence: float) -> float:
    return float(stats.norm.ppf(0.5 + confidence / 2.0))


def wilson_ci(successes: int, trials: int, confidence: float = DEFAULT_CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1 or not 0 <= successes <= trials:
        raise DomainError(f"need 0 <= successes <= trials and trials >= 1, got {successes}/{trials}")
    if not 0.0 < confidence < 1.0:
        raise DomainError(f"confidence must lie in (0, 1), got {confidence!r}")
    z = _z(confidence)
    p = successes / trials
    z2n = z * z / trials
    center = (p + z2n / 2.0) / (1.0 + z2n)
    half = z / (1.0 + z2n) * math.sqrt(p * (1.0 - p) / trials + z2n / (4.0 * trials))
    lo = 0.0 if successes == 0 else max(0.0, min(p, center - half))
    hi = 1.0 if successes == trials else min(1.0, max(p, center + half))
    return lo, hi


def symmetry_pvalue(tally: Tally) -> float:
    """Two-sided exact binomial test of P(A wins | strict) = 1/2."""
    if tally.strict == 0:
        return 1.0
    return float(stats.binomtest(tally.wins_a, tally.strict, 0.5).pvalue)


def decide_sp(tally: Tally, alpha: float = DEFAULT_ALPHA,
              margin: float = DEFAULT_EQUIVALENCE_MARGIN) -> Verdict:
    """Map counts to a verdict.

    Rejecting symmetry gives a directional verdict.  Otherwise the result is
    sp-equal only when there were no strict wins at all, or when the
    (1 - alpha) Wilson interval for the A-share of strict wins lies within
    ``1/2 +- margin``; everything else is inconclusive.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    if tally.strict == 0:
        return Verdict.SP_EQUAL
    if symmetry_pvalue(tally) < alpha:
        return Verdict.A_SP_GREATER if tally.wins_a > tally.wins_b else Verdict.B_SP_GREATER
    lo, hi = wilson_ci(tally.wins_a, tally.strict, 1.0 - alpha)
    if 0.5 - margin <= lo and hi <= 0.5 + margin:
        return Verdict.SP_EQUAL
    return Verdict.INCONCLUSIVE


def compare(scenario: Scenario, n_trials: int, seed: int = 0, tie_tol: float = 0.0,
            alpha: float = DEFAULT_ALPHA, confidence: float = DEFAULT_CONFIDENCE,
            workers: int = 1) -> PrecedenceReport:
    tally = run_trials(scenario, n_trials, seed, tie_tol, workers)
    return PrecedenceReport(
        tally=tally,
        ci_gt=wilson_ci(tally.wins_a, tally.n_trials, confidence),
        ci_lt=wilson_ci(tally.wins_b, tally.n_trials, confidence),
        verdict=decide_sp(tally, alpha),
        p_value=symmetry_pvalue(tally),
        seed=seed,
        tie_tol=tie_tol,
        alpha=alpha,
        confidence=confidence,
        digest=scenario.digest(),
    )
