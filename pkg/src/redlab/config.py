"""Run configuration documents.

A document is YAML (JSON is accepted as a subset).  Scenario fields::

    n: 2
    k: 2
    m: 1
    mode: active            # or cold
    x: [<dist>, <dist>]     # n entries
    y: [[<dist>, <dist>]]   # m rows of n entries

Distributions are tagged records::

    {kind: exponential, rate: 1.0}
    {kind: weibull, shape: 1.5, scale: 2.0}
    {kind: uniform, lo: 0.0, hi: 1.0}
    {kind: point, value: 2.0}
    {kind: discrete, atoms: [[1, "1/2"], [2, "1/2"]]}

Run parameters (all optional): ``trials``, ``seed``, ``tie_tol``, ``alpha``,
``confidence``, ``format`` and ``guards: {oracle_max_outcomes, max_enum_bits}``.
A ``sweep`` section replaces the scenario for grid runs; see :class:`SweepSpec`.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import yaml

from redlab.distributions import (
    DiscreteFinite,
    Exponential,
    LifetimeDistribution,
    PointMass,
    Uniform,
    Weibull,
)
from redlab.errors import ConfigParseError, DomainError, ValidationError
from redlab.oracle import DEFAULT_MAX_OUTCOMES
from redlab.precedence import DEFAULT_ALPHA, DEFAULT_CONFIDENCE
from redlab.systems import Mode, Scenario, SystemSpec

DEFAULT_TRIALS = 10**6

_KINDS = {
    "exponential": (Exponential, ("rate",)),
    "weibull": (Weibull, ("shape", "scale")),
    "uniform": (Uniform, ("lo", "hi")),
    "point": (PointMass, ("value",)),
    "discrete": (DiscreteFinite, ("atoms",)),
}
_KIND_ALIASES = {"point_mass": "point", "pointmass": "point", "discrete_finite": "discrete"}

_TOP_KEYS = {"n", "k", "m", "mode", "x", "y", "trials", "seed", "tie_tol", "alpha",
             "confidence", "format", "guards", "sweep"}


@dataclass(frozen=True)
class SweepSpec:
    """Grid of ``(n, k, m, mode)`` cells sharing a distribution template.

    ``template`` is a list of distributions assigned cyclically, row-major
    over (layer, position): cell position ``p`` gets ``template[p % len]``.
    ``k_values=None`` means every k in 1..n; cells with k > n are skipped.
    """

    n_values: tuple[int, ...]
    k_values: tuple[int, ...] | None
    m_values: tuple[int, ...]
    modes: tuple[Mode, ...]
    template: tuple[LifetimeDistribution, ...]

    def cells(self):
        for mode in self.modes:
            for n in self.n_values:
                ks = range(1, n + 1) if self.k_values is None else [k for k in self.k_values if k <= n]
                for k in ks:
                    for m in self.m_values:
                        yield self.scenario(n, k, m, mode)

    def scenario(self, n: int, k: int, m: int, mode: Mode) -> Scenario:
        t = self.template
        layers = [[t[(layer * n + j) % len(t)] for j in range(n)] for layer in range(m + 1)]
        return Scenario(SystemSpec(n, k), m, mode, layers[0], layers[1:])

    def to_dict(self) -> dict:
        return {
            "n": list(self.n_values),
            "k": "all" if self.k_values is None else list(self.k_values),
            "m": list(self.m_values),
            "modes": [mo.value for mo in self.modes],
            "template": [d.to_dict() for d in self.template],
        }


@dataclass(frozen=True)
class RunConfig:
    scenario: Scenario | None = None
    sweep: SweepSpec | None = None
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    tie_tol: float = 0.0
    alpha: float = DEFAULT_ALPHA
    confidence: float = DEFAULT_CONFIDENCE
    output_format: str | None = None
    oracle_max_outcomes: int = DEFAULT_MAX_OUTCOMES
    max_enum_bits: int | None = None

    def to_dict(self) -> dict:
        out = {
            "trials": self.trials,
            "seed": self.seed,
            "tie_tol": self.tie_tol,
            "alpha": self.alpha,
            "confidence": self.confidence,
        }
        if self.scenario is not None:
            out["scenario"] = self.scenario.to_dict()
        if self.sweep is not None:
            out["sweep"] = self.sweep.to_dict()
        return out

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_real(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _int_field(doc, key, path, minimum=None, default=None):
    if key not in doc:
        if default is None:
            raise ValidationError(path, "is required")
        return default
    v = doc[key]
    if not _is_int(v):
        raise ValidationError(path, f"must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ValidationError(path, f"must be >= {minimum}, got {v}")
    return v


def _real_field(doc, key, path, default, lo=None, hi=None, lo_open=False, hi_open=False):
    v = doc.get(key, default)
    if not _is_real(v):
        raise ValidationError(path, f"must be a finite number, got {v!r}")
    if lo is not None and (v < lo or (lo_open and v == lo)):
        raise ValidationError(path, f"must be {'>' if lo_open else '>='} {lo}, got {v}")
    if hi is not None and (v > hi or (hi_open and v == hi)):
        raise ValidationError(path, f"must be {'<' if hi_open else '<='} {hi}, got {v}")
    return float(v)


def parse_distribution(spec: Any, path: str) -> LifetimeDistribution:
    if not isinstance(spec, dict):
        raise ValidationError(path, f"must be a record with a 'kind' field, got {spec!r}")
    kind = str(spec.get("kind", "")).lower()
    kind = _KIND_ALIASES.get(kind, kind)
    if kind not in _KINDS:
        raise ValidationError(f"{path}.kind", f"unknown distribution kind {spec.get('kind')!r}; "
                              f"expected one of {sorted(_KINDS)}")
    cls, params = _KINDS[kind]
    unknown = set(spec) - set(params) - {"kind"}
    if unknown:
        raise ValidationError(f"{path}.{sorted(unknown)[0]}", f"unexpected field for {kind}")
    args = []
    for name in params:
        if name not in spec:
            raise ValidationError(f"{path}.{name}", "is required")
        value = spec[name]
        if name == "atoms":
            if not isinstance(value, list):
                raise ValidationError(f"{path}.atoms", "must be a list of [value, weight] pairs")
            atoms = []
            for i, atom in enumerate(value):
                if not (isinstance(atom, (list, tuple)) and len(atom) == 2):
                    raise ValidationError(f"{path}.atoms[{i}]", "must be a [value, weight] pair")
                v, w = atom
                if not _is_real(v):
                    raise ValidationError(f"{path}.atoms[{i}][0]", f"must be a number, got {v!r}")
                try:
                    w = Fraction(str(w)) if not isinstance(w, float) else Fraction(repr(w))
                except (ValueError, ZeroDivisionError):
                    raise ValidationError(f"{path}.atoms[{i}][1]", f"is not a rational weight: {w!r}") from None
                atoms.append((v, w))
            value = atoms
        elif not _is_real(value):
            raise ValidationError(f"{path}.{name}", f"must be a finite number, got {value!r}")
        args.append(value)
    try:
        return cls(*args)
    except DomainError as exc:
        raise ValidationError(path, str(exc)) from None


def _int_list(doc, key, path, minimum=1):
    raw = doc.get(key)
    if raw is None:
        raise ValidationError(path, "is required")
    if _is_int(raw):
        raw = [raw]
    if not isinstance(raw, list) or not raw or not all(_is_int(v) and v >= minimum for v in raw):
        raise ValidationError(path, f"must be a non-empty list of integers >= {minimum}")
    return tuple(raw)


def _parse_mode(value, path) -> Mode:
    try:
        return Mode(str(value).lower())
    except ValueError:
        raise ValidationError(path, f"must be 'active' or 'cold', got {value!r}") from None


def _parse_scenario(doc: dict) -> Scenario:
    n = _int_field(doc, "n", "n", minimum=1)
    k = _int_field(doc, "k", "k", minimum=1)
    if k > n:
        raise ValidationError("k", f"must satisfy 1 <= k <= n={n}, got {k}")
    m = _int_field(doc, "m", "m", minimum=1)
    if "mode" not in doc:
        raise ValidationError("mode", "is required")
    mode = _parse_mode(doc["mode"], "mode")

    x = doc.get("x")
    if not isinstance(x, list):
        raise ValidationError("x", "must be a list of n distributions")
    if len(x) != n:
        raise ValidationError("x", f"has {len(x)} entries, expected n={n}")
    y = doc.get("y")
    if not isinstance(y, list) or not all(isinstance(row, list) for row in y):
        raise ValidationError("y", "must be a list of m rows of n distributions")
    if len(y) != m:
        raise ValidationError("y", f"has {len(y)} rows, expected m={m}")
    for i, row in enumerate(y):
        if len(row) != n:
            raise ValidationError(f"y[{i}]", f"has {len(row)} entries, expected n={n}")

    x_dists = [parse_distribution(d, f"x[{j}]") for j, d in enumerate(x)]
    y_dists = [[parse_distribution(d, f"y[{i}][{j}]") for j, d in enumerate(row)]
               for i, row in enumerate(y)]
    return Scenario(SystemSpec(n, k), m, mode, x_dists, y_dists)


def _parse_sweep(doc: dict, default_mode) -> SweepSpec:
    sw = doc["sweep"]
    if not isinstance(sw, dict):
        raise ValidationError("sweep", "must be a record")
    n_values = _int_list(sw, "n", "sweep.n")
    k_raw = sw.get("k", "all")
    k_values = None if k_raw == "all" else _int_list(sw, "k", "sweep.k")
    m_values = _int_list(sw, "m", "sweep.m")
    modes_raw = sw.get("modes", sw.get("mode", default_mode))
    if modes_raw is None:
        raise ValidationError("sweep.modes", "is required")
    if not isinstance(modes_raw, list):
        modes_raw = [modes_raw]
    modes = tuple(_parse_mode(v, f"sweep.modes[{i}]") for i, v in enumerate(modes_raw))
    template = sw.get("template")
    if isinstance(template, dict):
        template = [template]
    if not isinstance(template, list) or not template:
        raise ValidationError("sweep.template", "must be a distribution or a non-empty list of them")
    dists = tuple(parse_distribution(d, f"sweep.template[{i}]") for i, d in enumerate(template))
    return SweepSpec(n_values, k_values, m_values, modes, dists)


def load_document(text: str) -> dict:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigParseError(f"malformed configuration document: {exc}") from None
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigParseError("configuration document must be a top-level record")
    return doc


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a configuration document."""
    doc = load_document(text)
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ValidationError(sorted(unknown)[0], "unknown top-level field")

    scenario = None
    if any(key in doc for key in ("n", "k", "m", "x", "y")):
        scenario = _parse_scenario(doc)
    sweep = _parse_sweep(doc, doc.get("mode")) if "sweep" in doc else None

    fmt = doc.get("format")
    if fmt is not None and fmt not in ("json", "csv"):
        raise ValidationError("format", f"must be 'json' or 'csv', got {fmt!r}")
    guards = doc.get("guards", {}) or {}
    if not isinstance(guards, dict):
        raise ValidationError("guards", "must be a record")
    unknown = set(guards) - {"oracle_max_outcomes", "max_enum_bits"}
    if unknown:
        raise ValidationError(f"guards.{sorted(unknown)[0]}", "unknown guard")

    return RunConfig(
        scenario=scenario,
        sweep=sweep,
        trials=_int_field(doc, "trials", "trials", minimum=1, default=DEFAULT_TRIALS),
        seed=_int_field(doc, "seed", "seed", default=0),
        tie_tol=_real_field(doc, "tie_tol", "tie_tol", 0.0, lo=0.0),
        alpha=_real_field(doc, "alpha", "alpha", DEFAULT_ALPHA, lo=0.0, hi=1.0, lo_open=True, hi_open=True),
        confidence=_real_field(doc, "confidence", "confidence", DEFAULT_CONFIDENCE,
                               lo=0.0, hi=1.0, lo_open=True, hi_open=True),
        output_format=fmt,
        oracle_max_outcomes=_int_field(guards, "oracle_max_outcomes", "guards.oracle_max_outcomes",
                                       minimum=1, default=DEFAULT_MAX_OUTCOMES),
        max_enum_bits=(_int_field(guards, "max_enum_bits", "guards.max_enum_bits", minimum=1)
                       if "max_enum_bits" in guards else None),
    )
