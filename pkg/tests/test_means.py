import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tailbound.errors import InvalidInput
from tailbound.means import classical_means, geometric_mean, power_mean

GRID = (-10, -5, -1, -0.5, 0, 0.5, 1, 2, 5, 10)
positive_sets = st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=20)


def test_power_mean_examples():
    assert power_mean([1, 4], 1) == pytest.approx(2.5, rel=1e-15)
    assert power_mean([1, 4], 0) == pytest.approx(2.0, rel=1e-15)
    assert power_mean([1, 4], -1) == pytest.approx(1.6, rel=1e-15)
    assert power_mean([1, 4], math.inf) == 4.0
    assert power_mean([1, 4], -math.inf) == 1.0


def test_classical_means_examples():
    assert classical_means([2, 2, 2]) == pytest.approx((2, 2, 2))
    assert classical_means([1, 4]) == pytest.approx((1.6, 2.0, 2.5))
    assert classical_means([1, 2, 4]) == pytest.approx((12 / 7, 2, 7 / 3))


def test_rejects_nonpositive():
    for bad in ([1, -1], [0, 2], [], [math.inf]):
        with pytest.raises(InvalidInput):
            power_mean(bad, 1)


def test_monotone_in_p_random_sets(rng):
    for _ in range(1000):
        s = rng.uniform(0.01, 100.0, size=int(rng.integers(1, 25)))
        vals = [power_mean(s, p) for p in GRID]
        for a, b in zip(vals, vals[1:]):
            assert b >= a * (1 - 1e-9)


@given(positive_sets)
def test_chain_and_range(s):
    h, g, a = classical_means(s)
    assert h <= g * (1 + 1e-12) and g <= a * (1 + 1e-12)
    for p in GRID:
        assert min(s) <= power_mean(s, p) <= max(s)


@given(positive_sets, st.floats(1e-3, 1e3), st.sampled_from(GRID))
def test_scale_equivariance(s, c, p):
    assert power_mean([c * v for v in s], p) == pytest.approx(c * power_mean(s, p), rel=1e-12)


@given(positive_sets)
def test_small_p_matches_geometric(s):
    g = geometric_mean(s)
    assert abs(power_mean(s, 1e-9) - g) < 1e-6 * g
    assert abs(power_mean(s, -1e-9) - g) < 1e-6 * g


def test_matches_direct_formula_where_safe(rng):
    # plain (sum x^p / n)^(1/p) as an oracle in a range where it cannot overflow
    for _ in range(200):
        s = rng.uniform(0.5, 2.0, size=int(rng.integers(1, 10)))
        for p in (-3.0, -0.7, 0.3, 1.5, 4.0):
            assert power_mean(s, p) == pytest.approx(np.mean(s**p) ** (1 / p), rel=1e-12)


def test_large_p_gap_matches_asymptotics(rng):
    # with the other values at least 10% away from the extreme m (multiplicity k),
    # M_p = m (k/n)^(1/p) up to negligible terms, so |M_p - m| ~ m log(n/k) / |p|
    for _ in range(200):
        m, k, rest = rng.uniform(1, 10), int(rng.integers(1, 4)), int(rng.integers(1, 15))
        for p in (1e6, -1e6):
            others = m * (rng.uniform(0.1, 0.9, rest) if p > 0 else rng.uniform(1.1, 9.0, rest))
            x = np.concatenate([np.full(k, m), others])
            k = np.count_nonzero(x == m)
            predicted = m * math.log(x.size / k) / abs(p)
            assert abs(power_mean(x, p) - m) == pytest.approx(predicted, rel=1e-3)
