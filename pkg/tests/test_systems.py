import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from redlab.errors import DimensionError, DomainError
from redlab.systems import (
    Mode,
    Realization,
    Scenario,
    SystemSpec,
    compose_active_component,
    compose_cold_component,
    component_level_lifetime,
    evaluate_pair,
    evaluate_pair_batch,
    structure_phi,
    system_level_lifetime,
    system_lifetime,
    system_lifetime_batch,
)
from redlab.distributions import Exponential

E1 = Exponential(1.0)


def scen(n, k, m, mode):
    return Scenario(SystemSpec(n, k), m, mode, [E1] * n, [[E1] * n] * m)


def test_spec_validation():
    with pytest.raises(DomainError):
        SystemSpec(2, 3)
    with pytest.raises(DomainError):
        SystemSpec(0, 0)
    with pytest.raises(DomainError):
        SystemSpec(3, 0)


def test_scenario_dimension_checks():
    with pytest.raises(DimensionError):
        Scenario(SystemSpec(2, 1), 1, "active", [E1], [[E1, E1]])
    with pytest.raises(DimensionError):
        Scenario(SystemSpec(2, 1), 2, "active", [E1, E1], [[E1, E1]])
    with pytest.raises(DimensionError):
        Scenario(SystemSpec(2, 1), 1, "active", [E1, E1], [[E1]])
    with pytest.raises(DomainError):
        Scenario(SystemSpec(2, 1), 0, "active", [E1, E1], [])


def test_structure_phi_examples():
    assert structure_phi(SystemSpec(3, 2), (1, 0, 1)) == 1
    assert structure_phi(SystemSpec(3, 2), (1, 0, 0)) == 0
    assert structure_phi(SystemSpec(4, 1), (0, 0, 0, 0)) == 0
    with pytest.raises(DimensionError):
        structure_phi(SystemSpec(3, 2), (1, 0))


def test_system_lifetime_examples():
    assert system_lifetime(SystemSpec(3, 2), (5, 1, 3)) == 3
    assert system_lifetime(SystemSpec(3, 1), (5, 1, 3)) == 5
    assert system_lifetime(SystemSpec(3, 3), (5, 1, 3)) == 1
    with pytest.raises(DimensionError):
        system_lifetime(SystemSpec(3, 3), (5, 1))


def test_compose_examples():
    assert compose_active_component((2, 1), [(1, 3)]) == [2, 3]
    assert compose_active_component((0, 0), [(0, 0)]) == [0, 0]
    assert compose_active_component((1, 5), [(2, 0), (3, 1)]) == [3, 5]
    assert compose_cold_component((2, 1), [(1, 3)]) == [3, 4]
    assert compose_cold_component((1, 1), [(0, 0)]) == [1, 1]
    assert compose_cold_component((1, 2), [(1, 1), (2, 0)]) == [4, 3]
    with pytest.raises(DimensionError):
        compose_cold_component((1, 1, 1), [])
    with pytest.raises(DimensionError):
        compose_active_component((1, 1), [(1,)])


def test_architecture_lifetimes_examples():
    r = Realization((2, 1), [(1, 3)])
    assert component_level_lifetime(scen(2, 2, 1, "active"), r) == 2
    assert component_level_lifetime(scen(2, 1, 1, "cold"), r) == 4
    assert component_level_lifetime(scen(2, 2, 1, "cold"), r) == 3
    assert system_level_lifetime(scen(2, 2, 1, "active"), r) == 1
    assert system_level_lifetime(scen(2, 1, 1, "cold"), r) == 5
    assert system_level_lifetime(scen(2, 2, 1, "cold"), r) == 2


def test_evaluate_pair_examples():
    r = Realization((2, 1), [(1, 3)])
    p = evaluate_pair(scen(2, 2, 1, "active"), r)
    assert (p.a, p.b) == (2, 1)
    p = evaluate_pair(scen(2, 1, 1, "cold"), r)
    assert (p.a, p.b) == (4, 5)
    p = evaluate_pair(scen(2, 1, 1, "active"), Realization((0.3, 7.1), [(2.2, 0.4)]))
    assert p.a == p.b == 7.1
    with pytest.raises(DimensionError):
        evaluate_pair(scen(2, 1, 1, "active"), Realization((1, 2), [(1, 2), (3, 4)]))


def test_lifetime_threshold_characterisation():
    """t is the last instant at which at least k components still work."""
    spec = SystemSpec(4, 2)
    lives = (0.5, 2.0, 1.25, 3.0)
    t = system_lifetime(spec, lives)
    for s in np.linspace(0, 4, 81):
        state = tuple(int(v > s) for v in lives)
        assert structure_phi(spec, state) == int(s < t)


def test_exact_rational_inputs_pass_through():
    r = Realization((Fraction(1, 3), Fraction(1, 2)), [(Fraction(1, 6), Fraction(1, 6))])
    p = evaluate_pair(scen(2, 2, 1, "cold"), r)
    assert p.a == Fraction(1, 2) and p.b == Fraction(1, 2)


lifetimes = st.floats(0.0, 100.0, allow_nan=False)


@st.composite
def configs(draw, max_n=5, max_m=3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, n))
    m = draw(st.integers(1, max_m))
    x = draw(st.lists(lifetimes, min_size=n, max_size=n))
    y = draw(st.lists(st.lists(lifetimes, min_size=n, max_size=n), min_size=m, max_size=m))
    return n, k, m, x, y


@settings(max_examples=400)
@given(configs())
def test_active_pathwise_dominance(cfg):
    n, k, m, x, y = cfg
    p = evaluate_pair(scen(n, k, m, "active"), Realization(x, y))
    assert p.a >= p.b
    if k == 1:
        assert p.a == p.b


@settings(max_examples=400)
@given(configs())
def test_cold_boundary_dominance(cfg):
    n, _, m, x, y = cfg
    series = evaluate_pair(scen(n, n, m, "cold"), Realization(x, y))
    assert series.a >= series.b
    parallel = evaluate_pair(scen(n, 1, m, "cold"), Realization(x, y))
    assert parallel.b >= parallel.a


@given(configs())
def test_batch_matches_scalar(cfg):
    n, k, m, x, y = cfg
    for mode in Mode:
        s = scen(n, k, m, mode)
        p = evaluate_pair(s, Realization(x, y))
        a, b = evaluate_pair_batch(s, np.array([x]), np.array([y]))
        assert (a[0], b[0]) == (p.a, p.b)


def test_batch_dimension_errors():
    s = scen(2, 1, 1, "active")
    with pytest.raises(DimensionError):
        evaluate_pair_batch(s, np.zeros((3, 3)), np.zeros((3, 1, 3)))
    with pytest.raises(DimensionError):
        evaluate_pair_batch(s, np.zeros((3, 2)), np.zeros((3, 2, 2)))
    with pytest.raises(DimensionError):
        system_lifetime_batch(SystemSpec(3, 1), np.zeros((4, 2)))


@given(st.lists(lifetimes, min_size=1, max_size=8), st.data())
def test_system_lifetime_permutation_invariant_and_monotone(lives, data):
    n = len(lives)
    spec = SystemSpec(n, data.draw(st.integers(1, n)))
    t = system_lifetime(spec, lives)
    perm = data.draw(st.permutations(lives))
    assert system_lifetime(spec, perm) == t
    j = data.draw(st.integers(0, n - 1))
    bumped = list(lives)
    bumped[j] += data.draw(st.floats(0.0, 10.0))
    assert system_lifetime(spec, bumped) >= t
    assert system_lifetime_batch(spec, np.array([lives]))[0] == t


@pytest.mark.parametrize("n", range(1, 13))
def test_structure_phi_join_superadditive_exhaustive(n):
    codes = np.arange(1 << n, dtype=np.int64)
    popcount = np.array([bin(c).count("1") for c in codes])
    joined = popcount[codes[:, None] | codes[None, :]]
    for k in range(1, n + 1):
        phi = popcount >= k
        assert np.all((joined >= k) >= np.maximum(phi[:, None], phi[None, :]))
    # spot-check the vectorised table against the scalar definition
    def bits(c):
        return [int(b) for b in format(c, f"0{n}b")]

    spec = SystemSpec(n, max(1, n // 2))
    step = max(1, (1 << 2 * n) // 200)
    for u, v in itertools.islice(itertools.product(range(1 << n), repeat=2), 0, None, step):
        uv = [a | b for a, b in zip(bits(u), bits(v))]
        assert structure_phi(spec, uv) >= max(structure_phi(spec, bits(u)), structure_phi(spec, bits(v)))
