import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from redlab.distributions import (
    DiscreteFinite,
    Exponential,
    PointMass,
    RandomStream,
    Uniform,
    Weibull,
    quantile,
    sample,
    sample_block,
    uniforms,
)
from redlab.errors import DomainError, UnsupportedScenarioError
from redlab.distributions import finite_support


def test_quantile_examples():
    assert quantile(PointMass(2.0), 0.7) == 2.0
    assert quantile(Exponential(1.0), 0.5) == pytest.approx(math.log(2), abs=1e-12)
    assert quantile(Uniform(0.0, 1.0), 0.25) == 0.25


def test_weibull_quantile_matches_scipy():
    d = Weibull(shape=1.7, scale=2.5)
    for u in (0.01, 0.3, 0.5, 0.99):
        assert d.quantile(u) == pytest.approx(stats.weibull_min(1.7, scale=2.5).ppf(u), rel=1e-12)


def test_discrete_quantile_smallest_atom_reaching_u():
    d = DiscreteFinite([(1.0, "1/4"), (3.0, "1/2"), (7.0, "1/4")])
    assert d.quantile(0.0) == 1.0
    assert d.quantile(0.25) == 1.0
    assert d.quantile(0.2500001) == 3.0
    assert d.quantile(0.75) == 3.0
    assert d.quantile(0.76) == 7.0
    assert d.quantile(1.0) == 7.0


@pytest.mark.parametrize("u", [-0.1, 1.5, float("nan")])
def test_quantile_rejects_levels_outside_unit_interval(u):
    with pytest.raises(DomainError):
        quantile(Exponential(1.0), u)


@pytest.mark.parametrize("make", [
    lambda: Exponential(0.0),
    lambda: Exponential(-1.0),
    lambda: Weibull(0.0, 1.0),
    lambda: Weibull(1.0, float("inf")),
    lambda: Uniform(1.0, 1.0),
    lambda: Uniform(-1.0, 1.0),
    lambda: PointMass(-0.5),
    lambda: DiscreteFinite([(1, "1/2"), (2, "1/3")]),
    lambda: DiscreteFinite([(2, "1/2"), (1, "1/2")]),
    lambda: DiscreteFinite([(1, "0"), (2, "1")]),
    lambda: DiscreteFinite([]),
])
def test_invalid_parameters_rejected(make):
    with pytest.raises(DomainError):
        make()


def test_discrete_weights_are_exact_rationals():
    d = DiscreteFinite([(0, "1/3"), (1, "1/3"), (2, "1/3")])
    assert sum(w for _, w in d.atoms()) == 1
    assert all(isinstance(w, Fraction) for _, w in d.atoms())


def test_finite_support_rejects_continuous():
    assert finite_support(PointMass(1.0)) == ((1.0, Fraction(1)),)
    with pytest.raises(UnsupportedScenarioError):
        finite_support(Exponential(1.0))


@given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=20))
def test_quantile_nondecreasing(us):
    us = sorted(us)
    for d in (Exponential(2.0), Weibull(0.7, 3.0), Uniform(1.0, 4.0),
              DiscreteFinite([(0.5, "1/3"), (1.5, "2/3")])):
        qs = d.quantile(np.array(us))
        assert np.all(qs[1:] >= qs[:-1])
        assert np.all(qs >= 0)


def test_sample_examples():
    s = RandomStream(seed=11, trial_index=5, layer=0, position=1)
    assert sample(PointMass(3.5), s) == 3.5
    assert sample(Exponential(1.0), s) == sample(Exponential(1.0), s)
    assert sample(Exponential(1.0), s) == pytest.approx(-math.log1p(-s.uniform()))


@given(st.integers(-2**63, 2**64 - 1), st.integers(0, 10**9), st.integers(0, 5), st.integers(1, 50))
def test_stream_is_pure_function_of_tag(seed, trial, layer, position):
    a = RandomStream(seed, trial, layer, position).uniform()
    b = RandomStream(seed, trial, layer, position).uniform()
    assert a == b
    assert 0.0 <= a < 1.0


@given(st.integers(0, 2**32), st.integers(0, 200), st.integers(1, 40))
def test_block_draws_do_not_depend_on_chunking(seed, start, count):
    whole = uniforms(seed, 1, 2, 0, start + count)
    part = uniforms(seed, 1, 2, start, count)
    assert np.array_equal(whole[start:], part)


def test_scalar_and_block_sampling_agree():
    d = Weibull(1.3, 2.0)
    block = sample_block(d, 99, 2, 3, 10, 5)
    singles = [sample(d, RandomStream(99, t, 2, 3)) for t in range(10, 15)]
    assert np.array_equal(block, singles)


def test_distinct_tags_give_uncorrelated_streams():
    a = uniforms(3, 0, 1, 0, 50_000)
    b = uniforms(3, 0, 2, 0, 50_000)
    c = uniforms(3, 1, 1, 0, 50_000)
    d = uniforms(4, 0, 1, 0, 50_000)
    for other in (b, c, d):
        assert abs(np.corrcoef(a, other)[0, 1]) < 0.02


def test_exponential_ks_statistic():
    draws = sample_block(Exponential(1.0), 2024, 0, 1, 0, 100_000)
    ks = stats.kstest(draws, lambda t: 1.0 - np.exp(-t)).statistic
    assert ks < 0.01


def test_discrete_frequencies_chi_square():
    d = DiscreteFinite([(1, "1/10"), (2, "3/10"), (5, "1/2"), (9, "1/10")])
    draws = sample_block(d, 17, 0, 1, 0, 100_000)
    values = [1, 2, 5, 9]
    observed = [np.count_nonzero(draws == v) for v in values]
    expected = [float(w) * 100_000 for _, w in d.atoms()]
    assert sum(observed) == 100_000
    assert stats.chisquare(observed, expected).pvalue > 0.001
