"""k-out-of-n structure function and the four redundancy architectures.

Two flavours of every lifetime computation live here:

* scalar functions on plain sequences, generic over the number type so the
  exact oracle can feed :class:`fractions.Fraction` values through them;
* ``*_batch`` functions on numpy arrays whose last axis is the component
  position, used by the Monte Carlo engine.

Cold-standby sums are accumulated layer by layer (X, then Y_1, Y_2, ...) on
both sides of the comparison.  Floating-point addition is monotone, so keeping
the order identical preserves the pathwise inequalities bit-for-bit.
"""

from __future__ import annotations

import enum
import hashlib
import heapq
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from redlab.distributions import LifetimeDistribution
from redlab.errors import DimensionError, DomainError


class Mode(str, enum.Enum):
    ACTIVE = "active"
    COLD = "cold"


@dataclass(frozen=True)
class SystemSpec:
    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.k, int) or not 1 <= self.k <= self.n:
            raise DomainError(f"k must satisfy 1 <= k <= n={self.n}, got {self.k!r}")


@dataclass(frozen=True)
class Scenario:
    spec: SystemSpec
    m: int
    mode: Mode
    x_dists: tuple[LifetimeDistribution, ...]
    y_dists: tuple[tuple[LifetimeDistribution, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "x_dists", tuple(self.x_dists))
        object.__setattr__(self, "y_dists", tuple(tuple(row) for row in self.y_dists))
        if not isinstance(self.m, int) or self.m < 1:
            raise DomainError(f"m must be a positive integer, got {self.m!r}")
        if len(self.x_dists) != self.spec.n:
            raise DimensionError(f"x has {len(self.x_dists)} entries, expected n={self.spec.n}")
        if len(self.y_dists) != self.m:
            raise DimensionError(f"y has {len(self.y_dists)} rows, expected m={self.m}")
        for i, row in enumerate(self.y_dists):
            if len(row) != self.spec.n:
                raise DimensionError(f"y[{i}] has {len(row)} entries, expected n={self.spec.n}")

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def k(self) -> int:
        return self.spec.k

    def layers(self) -> tuple[tuple[LifetimeDistribution, ...], ...]:
        """All distributions, layer 0 being X."""
        return (self.x_dists,) + self.y_dists

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "mode": self.mode.value,
            "x": [d.to_dict() for d in self.x_dists],
            "y": [[d.to_dict() for d in row] for row in self.y_dists],
        }

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Realization:
    x: tuple
    y: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(tuple(row) for row in self.y))

    def check(self, scenario: Scenario) -> None:
        _check_layers(self.x, self.y, scenario.n)
        if len(self.y) != scenario.m:
            raise DimensionError(f"realization has {len(self.y)} redundancy rows, expected m={scenario.m}")


@dataclass(frozen=True)
class PairOutcome:
    a: float  # component-level architecture
    b: float  # system-level architecture


def _check_layers(x: Sequence, ys: Sequence[Sequence], n: int | None = None) -> None:
    n = len(x) if n is None else n
    if len(x) != n:
        raise DimensionError(f"x has length {len(x)}, expected {n}")
    if len(ys) < 1:
        raise DimensionError("at least one redundancy layer is required")
    for i, row in enumerate(ys):
        if len(row) != n:
            raise DimensionError(f"y[{i}] has length {len(row)}, expected {n}")


def structure_phi(spec: SystemSpec, state: Sequence[int]) -> int:
    if len(state) != spec.n:
        raise DimensionError(f"state has length {len(state)}, expected n={spec.n}")
    if any(s not in (0, 1) for s in state):
        raise DomainError("state entries must be 0 or 1")
    return int(sum(state) >= spec.k)


def system_lifetime(spec: SystemSpec, lifetimes: Sequence):
    """k-th largest component lifetime, i.e. the (n-k+1)-th order statistic."""
    if len(lifetimes) != spec.n:
        raise DimensionError(f"got {len(lifetimes)} lifetimes, expected n={spec.n}")
    return heapq.nlargest(spec.k, lifetimes)[-1]


def compose_active_component(x: Sequence, ys: Sequence[Sequence]) -> list:
    _check_layers(x, ys)
    return [max(col) for col in zip(x, *ys)]


def compose_cold_component(x: Sequence, ys: Sequence[Sequence]) -> list:
    _check_layers(x, ys)
    out = list(x)
    for row in ys:
        out = [acc + v for acc, v in zip(out, row)]
    return out


def component_level_lifetime(scenario: Scenario, realization: Realization):
    realization.check(scenario)
    if scenario.mode is Mode.ACTIVE:
        composed = compose_active_component(realization.x, realization.y)
    else:
        composed = compose_cold_component(realization.x, realization.y)
    return system_lifetime(scenario.spec, composed)


def system_level_lifetime(scenario: Scenario, realization: Realization):
    """Active: best of the m+1 subsystems.  Cold: subsystems run back to back,
    each standby starting fresh when its predecessor fails."""
    realization.check(scenario)
    spec = scenario.spec
    lives = [system_lifetime(spec, realization.x)]
    lives += [system_lifetime(spec, row) for row in realization.y]
    if scenario.mode is Mode.ACTIVE:
        return max(lives)
    total = lives[0]
    for life in lives[1:]:
        total = total + life
    return total


def evaluate_pair(scenario: Scenario, realization: Realization) -> PairOutcome:
    return PairOutcome(
        a=component_level_lifetime(scenario, realization),
        b=system_level_lifetime(scenario, realization),
    )


# --- vectorised variants -----------------------------------------------------

def system_lifetime_batch(spec: SystemSpec, lifetimes: np.ndarray) -> np.ndarray:
    """Row-wise :func:`system_lifetime` over an array of shape ``(..., n)``."""
    lifetimes = np.asarray(lifetimes, dtype=float)
    if lifetimes.shape[-1] != spec.n:
        raise DimensionError(f"last axis has length {lifetimes.shape[-1]}, expected n={spec.n}")
    pos = spec.n - spec.k
    return np.partition(lifetimes, pos, axis=-1)[..., pos]


def evaluate_pair_batch(scenario: Scenario, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lifetimes ``(a, b)`` for many realizations at once.

    ``x`` has shape ``(T, n)`` and ``y`` shape ``(T, m, n)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 2 or x.shape[1] != scenario.n:
        raise DimensionError(f"x batch has shape {x.shape}, expected (T, {scenario.n})")
    if y.shape != (x.shape[0], scenario.m, scenario.n):
        raise DimensionError(
            f"y batch has shape {y.shape}, expected ({x.shape[0]}, {scenario.m}, {scenario.n})"
        )
    spec = scenario.spec
    if scenario.mode is Mode.ACTIVE:
        composed = np.maximum(x, y.max(axis=1))
        a = system_lifetime_batch(spec, composed)
        b = np.maximum(system_lifetime_batch(spec, x), system_lifetime_batch(spec, y).max(axis=1))
    else:
        composed = x.copy()
        b = system_lifetime_batch(spec, x)
        for i in range(scenario.m):
            composed += y[:, i, :]
            b = b + system_lifetime_batch(spec, y[:, i, :])
        a = system_lifetime_batch(spec, composed)
    return a, b
