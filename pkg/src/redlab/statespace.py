"""Exhaustive replay of the binary state-vector argument.

A state assignment fixes, at one time instant, the up/down state of every
original component (``x``) and every redundant unit (``ys``).  For a given
``(n, k, m, mode)`` this module enumerates all assignments as bit strings
``x_1..x_n y_11..y_1n .. y_m1..y_mn`` (integer code, most significant bit
first, so numeric order is lexicographic order), then

* evaluates the component-level and system-level structure functions,
* collects the assignments where one architecture is up and the other down,
* encodes each case of the case analysis as its literal inequality system
  and searches for a solution.

Cold-standby assignments must have at most one unit up per position.  The
system-level cold structure is "exactly one subsystem is live", the only
patterns the two-case analysis enumerates; assignments with two or more live
subsystems fall outside it and are only counted (``multi_live_count``).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from redlab.errors import BudgetError, InvalidAssignmentError
from redlab.systems import Mode, SystemSpec, structure_phi

DEFAULT_MAX_ENUM_BITS = 24
ENV_MAX_ENUM_BITS = "REDLAB_MAX_ENUM_BITS"
_CHUNK = 1 << 18


def max_enum_bits() -> int:
    raw = os.environ.get(ENV_MAX_ENUM_BITS)
    return int(raw) if raw else DEFAULT_MAX_ENUM_BITS


@dataclass(frozen=True)
class StateAssignment:
    x: tuple[int, ...]
    ys: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))
        object.__setattr__(self, "ys", tuple(tuple(int(v) for v in row) for row in self.ys))
        n = len(self.x)
        if any(v not in (0, 1) for row in (self.x,) + self.ys for v in row):
            raise InvalidAssignmentError("state entries must be 0 or 1")
        if any(len(row) != n for row in self.ys):
            raise InvalidAssignmentError("every y row must have the length of x")

    @classmethod
    def from_code(cls, code: int, n: int, m: int) -> "StateAssignment":
        bits = format(int(code), f"0{n * (m + 1)}b")
        rows = [tuple(int(c) for c in bits[i * n:(i + 1) * n]) for i in range(m + 1)]
        return cls(rows[0], tuple(rows[1:]))

    @property
    def layers(self) -> tuple[tuple[int, ...], ...]:
        return (self.x,) + self.ys

    def bitstring(self) -> str:
        return "".join(str(v) for row in self.layers for v in row)

    def code(self) -> int:
        return int(self.bitstring(), 2)

    def cold_valid(self) -> bool:
        return all(sum(col) <= 1 for col in zip(*self.layers))

    def render(self) -> str:
        parts = ["x=" + "".join(map(str, self.x))]
        parts += [f"y{i}=" + "".join(map(str, row)) for i, row in enumerate(self.ys, start=1)]
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()


def _require_valid(assignment: StateAssignment, mode: Mode) -> None:
    if Mode(mode) is Mode.COLD and not assignment.cold_valid():
        raise InvalidAssignmentError(
            f"{assignment.render()}: cold standby allows at most one unit up per position"
        )


def phi_component_level(spec: SystemSpec, assignment: StateAssignment, mode: Mode) -> int:
    _require_valid(assignment, mode)
    cols = list(zip(*assignment.layers))
    if Mode(mode) is Mode.ACTIVE:
        composed = [max(col) for col in cols]
    else:
        composed = [sum(col) for col in cols]
    return structure_phi(spec, composed)


def phi_system_level(spec: SystemSpec, assignment: StateAssignment, mode: Mode) -> int:
    _require_valid(assignment, mode)
    live = [structure_phi(spec, row) for row in assignment.layers]
    if Mode(mode) is Mode.ACTIVE:
        return max(live)
    return int(sum(live) == 1)


# --- case systems -----------------------------------------------------------

@dataclass(frozen=True)
class CaseSystem:
    """One case: a list of branches, each a required live/dead pattern over
    the m+1 subsystems (index 0 is x).  Every branch also carries the final
    inequality that the composed state vector has at most k-1 ones."""

    label: str
    branches: tuple[tuple[bool, ...], ...]


def case_systems(m: int, mode: Mode) -> list[CaseSystem]:
    mode = Mode(mode)
    all_dead = (False,) * m
    all_live = (True,) * m

    def proper_subsets(x_live: bool):
        out = []
        for r in range(1, m):
            for chosen in itertools.combinations(range(m), r):
                out.append((x_live,) + tuple(i in chosen for i in range(m)))
        return tuple(out)

    if mode is Mode.ACTIVE:
        return [
            CaseSystem("I", ((True,) + all_dead,)),
            CaseSystem("II", ((True,) + all_live,)),
            CaseSystem("III", proper_subsets(True)),
            CaseSystem("IV", ((False,) + all_live,)),
            CaseSystem("V", proper_subsets(False)),
        ]
    return [
        CaseSystem("I", ((True,) + all_dead,)),
        CaseSystem("II", tuple((False,) + tuple(i == r for i in range(m)) for r in range(m))),
    ]


@dataclass(frozen=True)
class CaseResult:
    label: str
    feasible: bool
    witness: StateAssignment | None
    branch_count: int


@dataclass
class CaseReport:
    spec: SystemSpec
    m: int
    mode: Mode
    cases: list[CaseResult]
    sys_over_comp_codes: np.ndarray
    comp_over_sys_codes: np.ndarray
    partition_check: bool
    assignment_count: int
    multi_live_count: int = 0
    reverse_witness: StateAssignment | None = None
    notes: list[str] = field(default_factory=list)

    def decode(self, codes) -> list[StateAssignment]:
        return [StateAssignment.from_code(c, self.spec.n, self.m) for c in codes]

    @property
    def sys_over_comp(self) -> list[StateAssignment]:
        return self.decode(self.sys_over_comp_codes)

    @property
    def comp_over_sys(self) -> list[StateAssignment]:
        return self.decode(self.comp_over_sys_codes)

    def violations(self) -> list[str]:
        """Claims of the case analysis that do not hold for this config."""
        out = [f"case {c.label} feasible: {c.witness}" for c in self.cases if c.feasible]
        if len(self.sys_over_comp_codes):
            out.append(f"{len(self.sys_over_comp_codes)} states with system level up, component level down")
        nonempty = len(self.comp_over_sys_codes) > 0
        if nonempty != (self.spec.k >= 2):
            out.append(f"component-over-system set {'non' if nonempty else ''}empty at k={self.spec.k}")
        if not self.partition_check:
            out.append("case patterns do not partition the divergence set")
        return out


def _check_budget(n: int, m: int, limit: int | None = None) -> int:
    bits = n * (m + 1)
    limit = max_enum_bits() if limit is None else limit
    if bits > limit:
        raise BudgetError(
            f"state enumeration needs {bits} bits (2^{bits} assignments), guard is {limit}",
            required=bits, limit=limit,
        )
    return bits


def iter_assignments(n: int, m: int, mode: Mode,
                     max_bits: int | None = None) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(codes, bits)`` chunks in increasing code order.

    ``bits`` has shape ``(N, m+1, n)``.  In cold mode invalid assignments are
    filtered out.  ``max_bits`` overrides the environment guard.
    """
    width = _check_budget(n, m, max_bits)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    cold = Mode(mode) is Mode.COLD
    for start in range(0, 1 << width, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, 1 << width), dtype=np.int64)
        bits = ((codes[:, None] >> shifts) & 1).astype(np.int8).reshape(-1, m + 1, n)
        if cold:
            keep = (bits.sum(axis=1) <= 1).all(axis=1)
            codes, bits = codes[keep], bits[keep]
        yield codes, bits


def _evaluate(spec: SystemSpec, bits: np.ndarray, mode: Mode):
    """Per-assignment subsystem sums, live flags and composed-vector count."""
    sums = bits.sum(axis=2)
    live = sums >= spec.k
    if Mode(mode) is Mode.ACTIVE:
        composed = bits.max(axis=1).sum(axis=1)
    else:
        composed = bits.sum(axis=(1, 2))
    return sums, live, composed


def _phi_masks(spec: SystemSpec, live: np.ndarray, composed: np.ndarray, mode: Mode):
    phi_comp = composed >= spec.k
    n_live = live.sum(axis=1)
    if Mode(mode) is Mode.ACTIVE:
        phi_sys = n_live >= 1
    else:
        phi_sys = n_live == 1
    return phi_comp, phi_sys, n_live


def enumerate_divergence(spec: SystemSpec, m: int, mode: Mode,
                         max_bits: int | None = None) -> tuple[list[StateAssignment], list[StateAssignment]]:
    """Assignments where exactly one architecture is up, in lexicographic order.

    In cold mode the second list is restricted to assignments with every
    subsystem down; the multi-live remainder is reported by
    :func:`check_cases` as a count.
    """
    report = check_cases(spec, m, mode, max_bits)
    return report.sys_over_comp, report.comp_over_sys


def check_cases(spec: SystemSpec, m: int, mode: Mode, max_bits: int | None = None) -> CaseReport:
    mode = Mode(mode)
    k = spec.k
    systems = case_systems(m, mode)
    witness_codes: dict[str, int | None] = {c.label: None for c in systems}
    sys_over_comp, comp_over_sys = [], []
    partition_ok = True
    total = multi_live = 0

    for codes, bits in iter_assignments(spec.n, m, mode, max_bits):
        total += len(codes)
        sums, live, composed = _evaluate(spec, bits, mode)
        phi_comp, phi_sys, n_live = _phi_masks(spec, live, composed, mode)

        sys_div = phi_sys & ~phi_comp
        if mode is Mode.ACTIVE:
            comp_div = phi_comp & ~phi_sys
        else:
            comp_div = phi_comp & (n_live == 0)
            multi_live += int(np.count_nonzero(n_live >= 2))
        sys_over_comp.append(codes[sys_div])
        comp_over_sys.append(codes[comp_div])

        # Each branch as its literal inequality system on subsystem sums.
        final = composed <= k - 1
        pattern_hits = np.zeros(len(codes), dtype=np.int64)
        solved_union = np.zeros(len(codes), dtype=bool)
        for case in systems:
            for branch in case.branches:
                pattern = np.ones(len(codes), dtype=bool)
                for layer, want_live in enumerate(branch):
                    pattern &= (sums[:, layer] >= k) if want_live else (sums[:, layer] <= k - 1)
                pattern_hits += pattern
                solved = pattern & final
                solved_union |= solved
                if solved.any():
                    found = int(codes[np.argmax(solved)])
                    prev = witness_codes[case.label]
                    witness_codes[case.label] = found if prev is None else min(prev, found)

        partition_ok &= bool(
            (pattern_hits <= 1).all()
            and np.array_equal(pattern_hits == 1, phi_sys)
            and np.array_equal(solved_union, sys_div)
        )

    sys_codes = np.concatenate(sys_over_comp)
    comp_codes = np.concatenate(comp_over_sys)
    n = spec.n
    cases = []
    for case in systems:
        code = witness_codes[case.label]
        witness = None if code is None else StateAssignment.from_code(code, n, m)
        cases.append(CaseResult(case.label, code is not None, witness, len(case.branches)))
    report = CaseReport(
        spec=spec,
        m=m,
        mode=mode,
        cases=cases,
        sys_over_comp_codes=sys_codes,
        comp_over_sys_codes=comp_codes,
        partition_check=partition_ok,
        assignment_count=total,
        multi_live_count=multi_live,
        reverse_witness=(StateAssignment.from_code(comp_codes[0], n, m) if len(comp_codes) else None),
    )
    if mode is Mode.COLD and multi_live:
        report.notes.append(
            f"{multi_live} valid assignments have two or more live subsystems; "
            "the two-case analysis does not cover them"
        )
    return report


def sweep(n_values, m_values, modes, max_bits: int | None = None) -> Iterator[CaseReport]:
    """Case reports for every ``(mode, n, m, k)`` with ``1 <= k <= n``."""
    for mode in modes:
        for n in n_values:
            for m in m_values:
                for k in range(1, n + 1):
                    yield check_cases(SystemSpec(n, k), m, mode, max_bits)
