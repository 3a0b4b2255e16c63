import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tailbound import events as ev
from tailbound.errors import InvalidInput


def random_space(rng, max_outcomes=16, max_events=6):
    m = int(rng.integers(1, max_outcomes + 1))
    probs = rng.dirichlet(np.ones(m))
    probs = probs / probs.sum()
    space = ev.FiniteProbabilitySpace(tuple(probs))
    k = int(rng.integers(1, max_events + 1))
    evs = [space.event(np.flatnonzero(rng.random(m) < rng.random())) for _ in range(k)]
    return space, evs


def union_oracle(space, evs):
    # indicator arithmetic, independent of the set-based code path
    member = np.zeros((len(evs), space.outcome_count), dtype=bool)
    for i, e in enumerate(evs):
        member[i, sorted(e.members)] = True
    return float(np.dot(space.outcome_probs, member.any(axis=0)))


def test_exact_prob_examples():
    sp = ev.FiniteProbabilitySpace((0.25,) * 4)
    assert ev.exact_prob(sp, sp.full) == 1.0
    assert ev.exact_prob(sp, sp.empty) == 0.0
    assert ev.exact_prob(sp, sp.event([0, 1, 3])) == pytest.approx(0.75)
    with pytest.raises(InvalidInput):
        sp.event([4])


def test_space_validation():
    with pytest.raises(InvalidInput):
        ev.FiniteProbabilitySpace((0.5, 0.6))
    with pytest.raises(InvalidInput):
        ev.FiniteProbabilitySpace((1.2, -0.2))


def test_boole_examples():
    sp = ev.FiniteProbabilitySpace((0.3, 0.4, 0.3))
    lo, hi = ev.boole_union_bounds(sp, [sp.event([0]), sp.event([1])])
    assert (lo, hi) == pytest.approx((0.4, 0.7))
    sp2 = ev.FiniteProbabilitySpace((0.5, 0.5))
    a = sp2.event([0])
    assert ev.boole_union_bounds(sp2, [a, a]) == pytest.approx((0.5, 1.0))
    assert ev.boole_union_bounds(sp2, [a]) == pytest.approx((0.5, 0.5))
    with pytest.raises(InvalidInput):
        ev.boole_union_bounds(sp2, [])


def test_bonferroni_examples():
    sp = ev.FiniteProbabilitySpace.product((0.3, 0.7), (0.4, 0.6))
    a, b = sp.event([2, 3]), sp.event([1, 3])
    assert ev.exact_prob(sp, a) == pytest.approx(0.7)
    assert ev.bonferroni_intersection(sp, [a, b]) == pytest.approx(0.3)
    assert ev.exact_prob(sp, a & b) == pytest.approx(0.42)
    assert ev.bonferroni_intersection(sp, [a]) == pytest.approx(0.7)
    assert ev.bonferroni_intersection(sp, [sp.full] * 3) == 1.0


def test_karlin_ost_examples():
    sp = ev.FiniteProbabilitySpace.product((0.5, 0.5), (0.5, 0.5))
    a, b = sp.event([2, 3]), sp.event([1, 3])
    assert ev.karlin_ost_truncation(sp, [a, b], 2) == pytest.approx((0.75, 0.75))
    assert ev.karlin_ost_truncation(sp, [a, b], 1) == pytest.approx((0.0, 1.0))
    assert ev.karlin_ost_truncation(sp, [a], 1) == pytest.approx((0.5, 0.5))
    with pytest.raises(InvalidInput):
        ev.karlin_ost_truncation(sp, [a, b], 3)
    with pytest.raises(InvalidInput):
        ev.karlin_ost_truncation(sp, [a, b], 0)


def test_randomized_union_and_intersection_bounds(rng):
    for _ in range(1000):
        sp, evs = random_space(rng)
        exact = union_oracle(sp, evs)
        lo, hi = ev.boole_union_bounds(sp, evs)
        assert lo - 1e-12 <= exact <= hi + 1e-12
        inter = ev.exact_prob(sp, ev._intersection(evs))
        assert ev.bonferroni_intersection(sp, evs) <= inter + 1e-12


def test_karlin_ost_sandwich_and_full_depth(rng):
    for _ in range(1000):
        sp, evs = random_space(rng)
        exact = union_oracle(sp, evs)
        for d in range(1, len(evs) + 1):
            lo, hi = ev.karlin_ost_truncation(sp, evs, d)
            assert lo - 1e-12 <= exact <= hi + 1e-12
        lo, hi = ev.karlin_ost_truncation(sp, evs, len(evs))
        assert abs(lo - exact) <= 1e-12 and abs(hi - exact) <= 1e-12


def test_partial_sums_alternate_around_union(rng):
    # the parity-ordered statement that does hold: odd partial sums lie above
    # the union and even ones below it
    for _ in range(300):
        sp, evs = random_space(rng)
        exact = union_oracle(sp, evs)
        for d, s in enumerate(ev.bonferroni_partial_sums(sp, evs), start=1):
            assert (s >= exact - 1e-12) if d % 2 else (s <= exact + 1e-12)


def test_odd_upper_bounds_need_not_decrease():
    # six copies of one event with probability 0.1: S1 = 0.6 but S3 = 1.1
    sp = ev.FiniteProbabilitySpace((0.1, 0.9))
    a = sp.event([0])
    s = ev.bonferroni_partial_sums(sp, [a] * 6)
    assert s[0] == pytest.approx(0.6) and s[2] == pytest.approx(1.1)


@given(st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
def test_axiom_suite_rows_hold(mask_a, mask_b):
    sp = ev.FiniteProbabilitySpace(tuple(np.full(16, 1 / 16)))
    a = sp.event(i for i in range(16) if mask_a >> i & 1)
    b = sp.event(i for i in range(16) if mask_b >> i & 1)
    assert all(r.holds for r in ev.axiom_suite(sp, a, b))
    assert all(r.holds for r in ev.axiom_suite(sp, a & b, b))


def test_axiom_suite_examples():
    sp = ev.FiniteProbabilitySpace((0.2, 0.3, 0.5))
    a, b = sp.event([0]), sp.event([0, 1])
    rows = {r.item: r for r in ev.axiom_suite(sp, a, b)}
    assert rows["monotone"].lhs == pytest.approx(0.2) and rows["monotone"].rhs == pytest.approx(0.5)
    same = {r.item: r for r in ev.axiom_suite(sp, b, b)}
    assert same["intersection-min"].lhs == pytest.approx(same["intersection-min"].rhs)
    cert = {r.item: r for r in ev.axiom_suite(sp, a, sp.full)}
    assert cert["conditional"].lhs == pytest.approx(cert["conditional"].rhs)
    empty = {r.item: r for r in ev.axiom_suite(sp, a, sp.empty)}
    assert "skipped" in empty["conditional"].note


def test_printed_complement_form_is_flagged():
    sp = ev.FiniteProbabilitySpace((0.5, 0.5))
    rows = {r.item: r for r in ev.axiom_suite(sp, sp.full, sp.full)}
    assert rows["complement"].holds
    assert "fails" in rows["complement"].note


def test_json_round_trip():
    sp = ev.FiniteProbabilitySpace((0.1, 0.2, 0.7))
    evs = [sp.event([0, 2]), sp.event([1])]
    sp2, evs2 = ev.space_from_json(ev.space_to_json(sp, evs))
    assert sp2 == sp and evs2 == evs
    assert json.loads(ev.space_to_json(sp, evs))["events"] == [[0, 2], [1]]
    with pytest.raises(InvalidInput):
        ev.space_from_json('{"probs": [1.0], "extra": 1}')
