"""Acceptance criteria 1-9. A summary hook in conftest prints one PASS/FAIL
line per criterion at the end of the run."""

import io
import math

import numpy as np
import pytest
from scipy import stats

from tailbound import events as ev, registry, tails as tb
from tailbound.cli import main
from tailbound.corpus import default_corpus
from tailbound.dist import DistributionSpec
from tailbound.estimation import (
    EstimatorSpec,
    ParametricFamily,
    chapman_robbins_bound,
    cramer_rao_bound,
    rao_blackwell_check,
)
from tailbound.means import geometric_mean, power_mean
from tailbound.numerics import sample_variance
from tailbound.orderstats import (
    SortedSample,
    hurlimann_average_excess,
    hurlimann_stop_loss,
    hurlimann_upper_average,
    papadatos_bound,
    papadatos_factor,
    samuelson_interval,
)

SPOT_TOL = 1e-9
P_GRID = (-10, -5, -1, -0.5, 0, 0.5, 1, 2, 5, 10)


# 1 ---------------------------------------------------------------------------


def test_criterion_1_bound_validity(default_report):
    ids = registry.bound_ids()
    assert len(ids) >= 30
    counts = {}
    for sc in default_corpus():
        counts[sc["inequality"]] = counts.get(sc["inequality"], 0) + 1
    assert set(counts) == set(ids) and min(counts.values()) >= 5
    kinds = {sc["oracle"]["kind"] for sc in default_corpus()}
    assert {"enumerate", "mc"} <= kinds
    truths = [r for r in default_report.results if not r.control]
    assert [r.scenario_id for r in truths if not r.holds or r.error] == []
    controls = [r for r in default_report.results if r.control]
    assert {r.inequality_id for r in controls} >= {"hoeffding_2_printed", "mcdiarmid_printed"}
    for r in controls:
        assert not r.holds, r.scenario_id
        assert r.margin < -3 * r.stderr, r.scenario_id


# 2 ---------------------------------------------------------------------------

SPOTS = [
    ("chebyshev(1,2)", lambda: tb.chebyshev(1, 2), 0.25),
    ("markov(1,4)", lambda: tb.markov(1, 4), 0.25),
    ("dkw(100,0.1,two)", lambda: tb.dkw(100, 0.1, "two"), 2 * math.exp(-2)),
    ("rademacher(100,20,one)", lambda: tb.chernoff_rademacher(100, 20), math.exp(-2)),
    ("bennett(10,1,10)", lambda: tb.bennett(10, 1, 10), math.exp(-10 * (2 * math.log(2) - 1))),
    ("bernstein(10,1,1)", lambda: tb.bernstein(10, 1, 1), math.exp(-3.75)),
    ("lecam(100x0.01)", lambda: tb.lecam_tv_bound([0.01] * 100), 0.02),
    ("etemadi_variance(1,10)", lambda: tb.etemadi_variance(1, 10), 0.27),
    ("kolmogorov([1]*10,10)", lambda: tb.kolmogorov_maximal([1] * 10, 10), 0.1),
]


def test_criterion_2_spot_values():
    bad = [(name, f().value, want) for name, f, want in SPOTS if abs(f().value - want) > SPOT_TOL]
    assert bad == []
    assert abs(tb.dkw(100, 0.1, "two").value - 0.270671) < 5e-7


# 3 ---------------------------------------------------------------------------


def test_criterion_3_optimizer():
    r = tb.chernoff_optimize(DistributionSpec.normal(), 2.0)
    assert abs(r.value - math.exp(-2)) <= SPOT_TOL
    assert abs(r.free_params["t"] - 2.0) <= 1e-6
    rng = np.random.default_rng(3)
    rad = DistributionSpec.rademacher()
    for n, a in [(100, 20.0), (10, 4.0), (50, 5.0), (7, 6.0)]:
        opt = tb.chernoff_optimize(rad, a, n_iid=n)
        assert opt.value <= math.exp(-a * a / (2 * n)) + SPOT_TOL
        # the sum's own law, evaluated pointwise
        k = np.arange(n + 1)
        law = DistributionSpec.finite(list(zip((2 * k - n).tolist(), stats.binom.pmf(k, n, 0.5).tolist())))
        for t in rng.uniform(1e-3, 3.0, 50):
            assert opt.value <= tb.chernoff_point(law, a, float(t)).value + SPOT_TOL


# 4 ---------------------------------------------------------------------------


def test_criterion_4_papadatos():
    assert papadatos_factor(1, 1) == 1.0
    assert abs(papadatos_factor(2, 2) - 2.0) <= 1e-6
    for n in range(1, 11):
        for k in range(1, n + 1):
            assert abs(papadatos_factor(n, k) - papadatos_factor(n, n + 1 - k)) <= 1e-8
    rng = np.random.default_rng(4)
    m = 20_000
    parents = {
        "uniform": (lambda shape: rng.random(shape), 1 / 12),
        "normal": (lambda shape: rng.standard_normal(shape), 1.0),
        "bernoulli": (lambda shape: (rng.random(shape) < 0.5).astype(float), 0.25),
    }
    for name, (draw, s2) in parents.items():
        for n in range(1, 21):
            x = np.sort(draw((m, n)), axis=1)
            for k in range(1, n + 1):
                var, se = sample_variance(x[:, k - 1])
                assert var <= papadatos_bound(n, k, s2) + 3 * se, (name, n, k)


# 5 ---------------------------------------------------------------------------


def _positive_sets(seed, count=1000):
    rng = np.random.default_rng(seed)
    return [rng.lognormal(0.0, 1.0, int(rng.integers(2, 31))) for _ in range(count)]


def test_criterion_5_monotonicity():
    for s in _positive_sets(5):
        vals = [power_mean(s, p) for p in P_GRID]
        for a, b in zip(vals, vals[1:]):
            assert b >= a * (1 - 1e-9)


def test_criterion_5_limits():
    misses = {"max": 0, "min": 0, "geometric": 0}
    sets = _positive_sets(55)
    for s in sets:
        rng_ = float(s.max() - s.min())
        if abs(power_mean(s, 1e6) - s.max()) >= 1e-6 * rng_:
            misses["max"] += 1
        if abs(power_mean(s, -1e6) - s.min()) >= 1e-6 * rng_:
            misses["min"] += 1
        g = geometric_mean(s)
        if abs(power_mean(s, 1e-9) - g) >= 1e-6 * g:
            misses["geometric"] += 1
    assert misses == {"max": 0, "min": 0, "geometric": 0}, f"limit misses out of {len(sets)} sets: {misses}"


# 6 ---------------------------------------------------------------------------


def test_criterion_6_karlin_ost():
    rng = np.random.default_rng(6)
    for _ in range(1000):
        m = int(rng.integers(1, 17))
        sp = ev.FiniteProbabilitySpace(tuple(rng.dirichlet(np.ones(m))))
        k = int(rng.integers(1, 7))
        evs = [sp.event(np.flatnonzero(rng.random(m) < rng.random())) for _ in range(k)]
        member = np.zeros((k, m), dtype=bool)
        for i, e in enumerate(evs):
            member[i, sorted(e.members)] = True
        truth = float(np.dot(sp.outcome_probs, member.any(axis=0)))
        for d in range(1, k + 1):
            lo, hi = ev.karlin_ost_truncation(sp, evs, d)
            assert lo - 1e-12 <= truth <= hi + 1e-12
        lo, hi = ev.karlin_ost_truncation(sp, evs, k)
        assert abs(lo - truth) <= 1e-12 and abs(hi - truth) <= 1e-12


# 7 ---------------------------------------------------------------------------


def test_criterion_7_estimation():
    fam = ParametricFamily("bernoulli", 0.5)
    x = fam.draw((1_000_000, 10), seed=7)
    xbar = x.mean(axis=1)
    var, se = sample_variance(xbar)
    cr = cramer_rao_bound(fam, 10)
    assert abs(cr - 0.025) <= 1e-15
    assert abs(var - cr) <= 4 * se
    cb = chapman_robbins_bound(fam, lambda t: t, [1e-3, -1e-3])
    assert abs(cb - 0.25) <= 0.01 * 0.25
    res = rao_blackwell_check(fam, 10, EstimatorSpec(lambda s: s[:, 0], lambda t: t), 100_000, seed=7)
    assert res.bound_ok
    assert abs(res.var_phi - 0.025) <= 0.05 * 0.025
    assert abs(res.var_u - 0.25) <= 0.05 * 0.25


# 8 ---------------------------------------------------------------------------


def test_criterion_8_deterministic_inequalities():
    rng = np.random.default_rng(8)
    worst = math.inf
    for _ in range(10_000):
        n = int(rng.integers(2, 51))
        kind = rng.integers(3)
        if kind == 0:
            x = rng.normal(0, 3, n)
        elif kind == 1:
            x = rng.exponential(1, n) ** 3
        else:
            x = rng.integers(0, 3, n).astype(float)
        s = SortedSample(tuple(x))
        v = s.values
        r = int(rng.integers(0, n))
        checks = [hurlimann_upper_average(s, r)]
        if r:
            checks.append(hurlimann_average_excess(s, r))
        lower = v[r - 1] if r else v[0] - 1.0
        checks.append(hurlimann_stop_loss(s, r, lower + (v[r] - lower) * float(rng.random())))
        worst = min([worst] + [c.slack for c in checks])
        lo, hi, inside = samuelson_interval(s)
        assert inside
        worst = min(worst, v[0] - lo, hi - v[-1])
    assert worst >= -1e-10
    equalities = [
        hurlimann_upper_average([0.0, 1.0], 1),
        hurlimann_upper_average([0.0, 0.0, 3.0], 2),
        hurlimann_average_excess([0.0, 1.0], 1),
        hurlimann_average_excess([0.0, 0.0, 1.0, 1.0], 2),
        hurlimann_stop_loss([0.0, 1.0], 1, 0.5),
        hurlimann_stop_loss([0.0, 1.0], 1, 1.0),
    ]
    assert max(abs(c.slack) for c in equalities) <= 1e-12


# 9 ---------------------------------------------------------------------------


def test_criterion_9_reproducible_csv(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["verify", "--seed", "0", "--out", str(p)], out=io.StringIO()) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
