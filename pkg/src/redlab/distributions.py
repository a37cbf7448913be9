"""Lifetime distributions and counter-based random streams.

Every lifetime is produced by inverse-CDF from a single uniform draw, and the
draw for ``(seed, trial, layer, position)`` is a pure function of those four
numbers.  Both redundancy architectures therefore see the same realization
(common random numbers), and trials can be evaluated in any order or in
parallel with identical results.

Uniforms come from numpy's Philox4x64 generator used in counter mode: the key
is ``(seed, tag)`` and the counter addresses the trial index directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from redlab.errors import DomainError, UnsupportedScenarioError

_MASK64 = (1 << 64) - 1
_DOUBLE_SCALE = 1.0 / (1 << 53)
# Philox4x64 emits four 64-bit words per counter increment.
_WORDS_PER_BLOCK = 4


def _check_u(u):
    arr = np.asarray(u, dtype=float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError(f"quantile level must lie in [0, 1], got {u!r}")
    return arr


def _finish(arr, scalar):
    return float(arr) if scalar else arr


def _positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")


def _nonnegative(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
        raise DomainError(f"{name} must be a nonnegative finite number, got {value!r}")


@dataclass(frozen=True)
class Exponential:
    rate: float

    def __post_init__(self):
        _positive("rate", self.rate)

    def quantile(self, u):
        arr = _check_u(u)
        with np.errstate(divide="ignore"):
            out = -np.log1p(-arr) / self.rate
        return _finish(out, np.ndim(u) == 0)

    def to_dict(self) -> dict:
        return {"kind": "exponential", "rate": self.rate}


@dataclass(frozen=True)
class Weibull:
    shape: float
    scale: float

    def __post_init__(self):
        _positive("shape", self.shape)
        _positive("scale", self.scale)

    def quantile(self, u):
        arr = _check_u(u)
        with np.errstate(divide="ignore"):
            out = self.scale * (-np.log1p(-arr)) ** (1.0 / self.shape)
        return _finish(out, np.ndim(u) == 0)

    def to_dict(self) -> dict:
        return {"kind": "weibull", "shape": self.shape, "scale": self.scale}


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float

    def __post_init__(self):
        _nonnegative("lo", self.lo)
        if not (isinstance(self.hi, (int, float)) and math.isfinite(self.hi)):
            raise DomainError(f"hi must be a finite number, got {self.hi!r}")
        if not self.hi > self.lo:
            raise DomainError(f"hi must exceed lo, got lo={self.lo!r} hi={self.hi!r}")

    def quantile(self, u):
        arr = _check_u(u)
        return _finish(self.lo + arr * (self.hi - self.lo), np.ndim(u) == 0)

    def to_dict(self) -> dict:
        return {"kind": "uniform", "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class PointMass:
    value: float

    def __post_init__(self):
        _nonnegative("value", self.value)

    def quantile(self, u):
        arr = _check_u(u)
        return _finish(np.full(arr.shape, float(self.value)), np.ndim(u) == 0)

    def atoms(self) -> tuple[tuple[float, Fraction], ...]:
        return ((self.value, Fraction(1)),)

    def to_dict(self) -> dict:
        return {"kind": "point", "value": self.value}


@dataclass(frozen=True)
class DiscreteFinite:
    """Finite support with exact rational weights.

    ``atoms`` is a sequence of ``(value, weight)`` pairs with strictly
    increasing values; weights are coerced to :class:`~fractions.Fraction`
    and must sum to exactly one.
    """

    atoms_: tuple[tuple[float, Fraction], ...]

    def __init__(self, atoms):
        pairs = []
        for i, atom in enumerate(atoms):
            try:
                value, weight = atom
            except (TypeError, ValueError):
                raise DomainError(f"atom {i} must be a (value, weight) pair") from None
            _nonnegative(f"atom {i} value", value)
            try:
                weight = Fraction(weight)
            except (TypeError, ValueError, ZeroDivisionError):
                raise DomainError(f"atom {i} weight {weight!r} is not a rational") from None
            if weight <= 0:
                raise DomainError(f"atom {i} weight must be positive, got {weight}")
            pairs.append((value, weight))
        if not pairs:
            raise DomainError("a discrete distribution needs at least one atom")
        for (v0, _), (v1, _) in zip(pairs, pairs[1:]):
            if not v1 > v0:
                raise DomainError("atom values must be strictly increasing")
        total = sum(w for _, w in pairs)
        if total != 1:
            raise DomainError(f"atom weights must sum to 1, got {total}")
        object.__setattr__(self, "atoms_", tuple(pairs))

    def atoms(self) -> tuple[tuple[float, Fraction], ...]:
        return self.atoms_

    @property
    def _cumulative(self) -> np.ndarray:
        cum, acc = [], Fraction(0)
        for _, w in self.atoms_:
            acc += w
            cum.append(float(acc))
        return np.array(cum)

    def quantile(self, u):
        arr = _check_u(u)
        values = np.array([float(v) for v, _ in self.atoms_])
        idx = np.searchsorted(self._cumulative, arr, side="left")
        out = values[np.minimum(idx, len(values) - 1)]
        return _finish(out, np.ndim(u) == 0)

    def to_dict(self) -> dict:
        return {
            "kind": "discrete",
            "atoms": [[v, f"{w.numerator}/{w.denominator}"] for v, w in self.atoms_],
        }


LifetimeDistribution = Union[Exponential, Weibull, Uniform, PointMass, DiscreteFinite]


def quantile(dist: LifetimeDistribution, u):
    """Inverse CDF of ``dist`` at level ``u`` (scalar or array)."""
    return dist.quantile(u)


def finite_support(dist: LifetimeDistribution) -> tuple[tuple[float, Fraction], ...]:
    """Atoms of a finite-support distribution; raises for continuous ones."""
    if isinstance(dist, (PointMass, DiscreteFinite)):
        return dist.atoms()
    raise UnsupportedScenarioError(
        f"{type(dist).__name__} has no finite support; exact enumeration needs "
        "point or discrete distributions"
    )


def tag_code(layer: int, position: int) -> int:
    """Pack a component tag into the low word of the Philox key.

    ``layer`` 0 is the original system X, ``layer`` i >= 1 the redundancy set
    Y_i; ``position`` runs from 1 to n.
    """
    if layer < 0 or position < 1:
        raise DomainError(f"invalid component tag ({layer}, {position})")
    return (layer << 32) | position


def uniforms(seed: int, layer: int, position: int, start: int, count: int) -> np.ndarray:
    """Uniform draws in [0, 1) for trials ``start .. start+count-1`` of one component."""
    if start < 0 or count < 0:
        raise DomainError("trial range must be nonnegative")
    key = np.array([seed & _MASK64, tag_code(layer, position)], dtype=np.uint64)
    bitgen = np.random.Philox(key=key)
    blocks, offset = divmod(start, _WORDS_PER_BLOCK)
    if blocks:
        bitgen.advance(blocks)
    raw = bitgen.random_raw(offset + count)[offset:]
    return (raw >> np.uint64(11)).astype(np.float64) * _DOUBLE_SCALE


@dataclass(frozen=True)
class RandomStream:
    seed: int
    trial_index: int
    layer: int
    position: int

    def __post_init__(self):
        if self.trial_index < 0:
            raise DomainError("trial_index must be nonnegative")
        tag_code(self.layer, self.position)

    def uniform(self) -> float:
        return float(uniforms(self.seed, self.layer, self.position, self.trial_index, 1)[0])


def sample(dist: LifetimeDistribution, stream: RandomStream) -> float:
    """Lifetime drawn from ``dist`` using the stream's deterministic uniform."""
    return float(dist.quantile(stream.uniform()))


def sample_block(dist: LifetimeDistribution, seed: int, layer: int, position: int,
                 start: int, count: int) -> np.ndarray:
    """Vectorised :func:`sample` over a contiguous range of trials."""
    return dist.quantile(uniforms(seed, layer, position, start, count))
