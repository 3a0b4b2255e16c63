import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, stats

from tailbound import dist
from tailbound.dist import DistributionSpec, parse_spec
from tailbound.errors import InvalidInput

from conftest import any_specs, finite_specs


def test_moment_examples():
    assert dist.moment(DistributionSpec.rademacher(), 2) == 1.0
    assert dist.moment(parse_spec("finite(0:0.5,2:0.5)"), 1) == pytest.approx(1.0, abs=1e-15)
    # quadrature oracle for the fourth central normal moment
    quad, _ = integrate.quad(lambda x: x**4 * stats.norm.pdf(x), -np.inf, np.inf)
    assert dist.moment(DistributionSpec.normal(), 4, central=True) == pytest.approx(quad, rel=1e-10)
    assert quad == pytest.approx(3.0, rel=1e-10)


def test_normal_absolute_moment_against_quadrature():
    s = DistributionSpec.normal(0.7, 1.3)
    quad, _ = integrate.quad(lambda x: abs(x) ** 3 * stats.norm.pdf(x, 0.7, 1.3), -np.inf, np.inf, epsabs=0, epsrel=1e-12)
    assert dist.moment(s, 3, absolute=True) == pytest.approx(quad, rel=1e-9)


def test_mgf_examples():
    assert dist.mgf(DistributionSpec.rademacher(), 1.0) == pytest.approx(math.cosh(1.0), rel=1e-14)
    assert dist.mgf(DistributionSpec.normal(), 1.0) == pytest.approx(math.exp(0.5), rel=1e-14)


@given(any_specs())
def test_mgf_at_zero_is_one(spec):
    assert dist.mgf(spec, 0.0) == 1.0


@given(any_specs(), st.floats(-2, 2))
def test_mgf_matches_direct_expectation(spec, t):
    if spec.family in ("normal", "uniform"):
        law = stats.norm(spec.mu, spec.sigma) if spec.family == "normal" else stats.uniform(spec.lo, spec.hi - spec.lo)
        if spec.family == "normal":
            # the integrand is a normal density tilted to mean mu + sigma^2 t
            c = spec.mu + spec.sigma**2 * t
            a, b = c - 40 * spec.sigma, c + 40 * spec.sigma
        else:
            a, b = spec.lo, spec.hi
        direct, _ = integrate.quad(lambda x: np.exp(t * x) * law.pdf(x), a, b, epsrel=1e-11, limit=200)
    else:
        v, p = spec.support_atoms()
        direct = float(np.sum(p * np.exp(t * v)))
    assert dist.mgf(spec, t) == pytest.approx(direct, rel=1e-8)


@given(any_specs())
def test_central_second_moment_identity(spec):
    m1, m2 = dist.moment(spec, 1), dist.moment(spec, 2)
    c2 = dist.moment(spec, 2, central=True)
    assert c2 == pytest.approx(m2 - m1 * m1, rel=1e-10, abs=1e-10 * max(1.0, m2))


def test_entropy_examples():
    assert dist.entropy(DistributionSpec.bernoulli(0.5)) == pytest.approx(math.log(2), abs=1e-15)
    assert dist.entropy(DistributionSpec.normal()) == pytest.approx(0.5 * math.log(2 * math.pi * math.e), abs=1e-14)
    assert dist.entropy(parse_spec("finite(7:1)")) == 0.0
    assert dist.entropy(DistributionSpec.binomial(12, 0.3)) == pytest.approx(stats.binom(12, 0.3).entropy(), rel=1e-12)


def test_spec_validation():
    with pytest.raises(InvalidInput):
        DistributionSpec.bernoulli(1.5)
    with pytest.raises(InvalidInput):
        DistributionSpec.normal(0, 0)
    with pytest.raises(InvalidInput):
        DistributionSpec.uniform(1, 1)
    with pytest.raises(InvalidInput):
        parse_spec("finite(0:0.5,1:0.6)")


def test_json_round_trip():
    s = parse_spec("finite(0:0.5,2:0.5)")
    assert s.to_dict() == {"family": "finite", "atoms": [[0.0, 0.5], [2.0, 0.5]]}
    assert DistributionSpec.from_json(s.to_json()) == s
    assert json.loads(DistributionSpec.normal(1, 2).to_json())["family"] == "normal"


@given(any_specs())
def test_text_round_trip(spec):
    assert DistributionSpec.from_dict(spec.to_dict()) == spec


def test_sampling_determinism_and_prefix():
    s = DistributionSpec.normal()
    a, b = dist.sample(s, 5, 42), dist.sample(s, 5, 42)
    assert a.values == b.values
    assert dist.sample(s, 3, 42).values == a.values[:3]
    assert dist.sample(parse_spec("finite(1:1)"), 3, 9).values == (1.0, 1.0, 1.0)


def test_offset_matches_contiguous_draw():
    s = DistributionSpec.uniform()
    full = dist.draw(s, 1000, 5)
    for off in (0, 1, 3, 4, 7, 500):
        assert np.array_equal(dist.draw(s, 100, 5, offset=off), full[off : off + 100])


def test_bernoulli_sample_mean():
    m = dist.sample(DistributionSpec.bernoulli(0.5), 10**6, 123).as_array().mean()
    assert abs(m - 0.5) < 0.002


def test_empirical_cdf_examples():
    f = dist.empirical_cdf([1.0, 2.0, 3.0])
    assert f(2.0) == pytest.approx(2 / 3)
    assert f(0.0) == 0.0 and f(3.0) == 1.0
    assert dist.empirical_cdf([1.0, 1.0, 2.0])(1.0) == pytest.approx(2 / 3)
    with pytest.raises(InvalidInput):
        dist.empirical_cdf([])


def test_empirical_cdf_within_dkw_band():
    spec = parse_spec("finite(-1:0.2,0:0.3,2.5:0.4,4:0.1)")
    n = 10**6
    f = dist.empirical_cdf(dist.sample(spec, n, 77))
    v, _ = spec.support_atoms()
    eps = math.sqrt(math.log(2 / 1e-3) / (2 * n))
    assert np.max(np.abs(f(v) - spec.cdf(v))) < eps


@given(finite_specs())
def test_profile_orders_support_and_mean(spec):
    p = spec.profile()
    assert p.support_min <= p.mean + 1e-12 and p.mean <= p.support_max + 1e-12
    assert p.variance >= 0
