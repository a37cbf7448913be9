from fractions import Fraction

import pytest

from redlab import DiscreteFinite, Exponential, PointMass, Scenario, SystemSpec


@pytest.fixture
def coin():
    return DiscreteFinite([(1, Fraction(1, 2)), (2, Fraction(1, 2))])


@pytest.fixture
def point_cold_k1():
    """x=(2,1), y=[(1,3)]: component level 4, system level 5."""
    return Scenario(SystemSpec(2, 1), 1, "cold",
                    [PointMass(2.0), PointMass(1.0)], [[PointMass(1.0), PointMass(3.0)]])


def iid_scenario(n, k, m, mode, dist):
    return Scenario(SystemSpec(n, k), m, mode, [dist] * n, [[dist] * n for _ in range(m)])


@pytest.fixture
def exp_scenario():
    def make(n, k, m, mode, rate=1.0):
        return iid_scenario(n, k, m, mode, Exponential(rate))
    return make


_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, passed, detail)``."""
    def record(number: int, passed: bool, detail: str) -> bool:
        _CRITERIA[number] = (passed, detail)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, detail = _CRITERIA[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
