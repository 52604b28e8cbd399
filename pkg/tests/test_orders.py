import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaorder.distribution import (
    Distribution,
    DomainError,
    IntervalBounds,
    cdf,
    cdf_double_integral,
    cdf_integral,
    product_hinge_moment,
)
from alphaorder.generators import random_mixture, sosd_pair, two_point_tuple, two_sufficient_pair, uniform_pair_tuple
from alphaorder.orders import (
    OrderParams,
    Outcome,
    PreconditionError,
    check_fosd,
    check_n_sufficient,
    check_sosd,
    check_two_concave_necessary,
    check_two_point,
    check_two_sufficient,
    check_uniform_pair,
    condition_extrema,
    shrink_support,
    two_point_distributions,
    uniform_pair_threshold,
)

from conftest import mixtures

UNIT = IntervalBounds(0.0, 1.0)
U01 = Distribution.uniform(0, 1)
BIN3 = Distribution.discrete([0, 1], [1 / 3, 2 / 3], 0, 1)
THRESHOLD = (2.4 + math.sqrt(1.6)) / 4


def ineq1(F, G, b, c):
    dI = cdf_integral(F, c) - cdf_integral(G, c)
    dJ = cdf_double_integral(F, c) - cdf_double_integral(G, c)
    return (b - c) * dI + 2 * dJ


def brute_two_sufficient(F, G, bounds, n=20001):
    """Worst value of both conditions on a dense grid."""
    cs = np.linspace(bounds.a, bounds.b, n)
    w1 = max(ineq1(F, G, bounds.b, c) for c in cs)
    w2 = max(cdf_double_integral(F, c) - cdf_double_integral(G, c) for c in cs)
    return w1, w2


# -- first and second order ---------------------------------------------------

def test_fosd_examples():
    assert check_fosd(U01, U01, UNIT).outcome is Outcome.DOMINATES
    assert check_fosd(Distribution.point(1, 0, 1), Distribution.point(0, 0, 1), UNIT).dominates
    v = check_fosd(Distribution.point(0.5, 0, 1), Distribution.discrete([0, 1], [0.45, 0.55], 0, 1), UNIT)
    assert v.outcome is Outcome.FAILS_AT
    x = v.witness[0]
    assert cdf(Distribution.point(0.5, 0, 1), x) > cdf(Distribution.discrete([0, 1], [0.45, 0.55], 0, 1), x) \
        or Distribution.point(0.5, 0, 1).cdf_left(x) > Distribution.discrete([0, 1], [0.45, 0.55], 0, 1).cdf_left(x)


def test_sosd_examples():
    mid = Distribution.point(0.5, 0, 1)
    assert check_sosd(mid, Distribution.discrete([0, 1], [0.5, 0.5], 0, 1), UNIT).dominates
    B = IntervalBounds(0, 1e6)
    v = check_sosd(Distribution.point(5e5, 0, 1e6), Distribution.discrete([0, 1e6], [0.45, 0.55], 0, 1e6), B)
    assert v.outcome is Outcome.FAILS_AT


def test_mismatched_support_rejected():
    with pytest.raises(DomainError):
        check_sosd(Distribution.uniform(0, 2), U01, UNIT)


@given(mixtures(), mixtures())
@settings(max_examples=40)
def test_sosd_witness_reproduces(F, G):
    v = check_sosd(F, G, UNIT)
    if v.fails:
        c = v.witness[0]
        assert cdf_integral(F, c) - cdf_integral(G, c) > 1e-9
        assert v.margin < 0


@given(mixtures(), mixtures())
@settings(max_examples=30)
def test_sosd_matches_dense_grid(F, G):
    cs = np.linspace(0, 1, 4001)
    worst = max(cdf_integral(F, c) - cdf_integral(G, c) for c in cs)
    v = check_sosd(F, G, UNIT)
    assert -v.margin >= worst - 1e-12
    if worst > 1e-8:
        assert v.fails


# -- 2-sufficient ---------------------------------------------------------

def test_example3_reductions():
    # condition 1 reduces to (1-c)(c/6)(c-2), condition 2 to c^2(c-1)/6
    for c in np.linspace(0, 1, 11):
        assert ineq1(U01, BIN3, 1.0, c) == pytest.approx((1 - c) * (c / 6) * (c - 2), abs=1e-15)
        assert cdf_double_integral(U01, c) - cdf_double_integral(BIN3, c) == pytest.approx(
            c * c * (c - 1) / 6, abs=1e-15)
    v = check_two_sufficient(U01, BIN3, UNIT)
    assert v.outcome is Outcome.DOMINATES
    ext = condition_extrema(U01, BIN3, UNIT)
    assert ext["ineq2"]["min"] == pytest.approx(-2 / 81, abs=1e-12)
    assert ext["ineq2"]["argmin"] == pytest.approx(2 / 3, abs=1e-9)
    assert ext["ineq2"]["max"] == pytest.approx(0.0, abs=1e-15)


def test_two_sufficient_beats_sosd():
    F = Distribution.point(0.5, 0, 1)
    G = Distribution.discrete([0, 1], [0.25, 0.75], 0, 1)
    assert check_sosd(F, G, UNIT).fails
    assert check_two_sufficient(F, G, UNIT).dominates


def test_reversed_strict_pair_fails_with_witness():
    v = check_two_sufficient(BIN3, U01, UNIT)
    assert v.outcome is Outcome.FAILS_AT
    c = v.witness[0]
    if v.condition_id.endswith("ineq1"):
        assert ineq1(BIN3, U01, 1.0, c) > 1e-9
    else:
        assert cdf_double_integral(BIN3, c) - cdf_double_integral(U01, c) > 1e-9


@given(mixtures(), mixtures())
@settings(max_examples=40, deadline=None)
def test_two_sufficient_agrees_with_dense_grid(F, G):
    w1, w2 = brute_two_sufficient(F, G, UNIT, 2001)
    v = check_two_sufficient(F, G, UNIT)
    exact_sup = -min(v.details["two-sufficient-ineq1"]["worst_slack"],
                     v.details["two-sufficient-ineq2"]["worst_slack"])
    assert exact_sup >= max(w1, w2) - 1e-12
    if max(w1, w2) > 1e-8:
        assert v.fails
    if v.fails:
        c = v.witness[0]
        val = ineq1(F, G, 1.0, c) if v.condition_id.endswith("ineq1") else \
            cdf_double_integral(F, c) - cdf_double_integral(G, c)
        assert val > 1e-9


def test_sosd_implies_two_sufficient_on_random_pairs():
    for seed in range(100):
        F, G = sosd_pair(seed, UNIT)
        assert check_sosd(F, G, UNIT).dominates
        assert check_two_sufficient(F, G, UNIT).dominates


@given(mixtures())
def test_reflexive(F):
    for chk in (check_fosd, check_sosd, check_two_sufficient):
        v = chk(F, F, UNIT)
        assert v.dominates and v.margin >= -1e-12


# -- necessary condition -----------------------------------------------------

def test_two_concave_necessary():
    assert check_two_concave_necessary(U01, BIN3, UNIT).dominates
    G = Distribution.point(0.5, 0, 1)
    F = Distribution.discrete([0, 1], [0.75, 0.25], 0, 1)
    assert cdf_double_integral(F, 1.0) - cdf_double_integral(G, 1.0) > 0
    assert check_two_concave_necessary(F, G, UNIT).outcome is Outcome.FAILS_AT


def _find_gap_pair():
    for seed in range(2000):
        rng = np.random.default_rng(seed)
        F = random_mixture(rng, UNIT, 2, 1)
        G = random_mixture(rng, UNIT, 2, 1)
        v = check_two_concave_necessary(F, G, UNIT)
        if v.outcome is Outcome.INCONCLUSIVE:
            return seed, F, G
    return None


def test_two_concave_gap_region_is_inconclusive():
    found = _find_gap_pair()
    assert found is not None
    _, F, G = found
    w1, w2 = brute_two_sufficient(F, G, UNIT)
    assert w2 <= 1e-9 < w1


# -- n-sufficient -------------------------------------------------------------

def test_n1_matches_sosd_on_random_pairs():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        F, G = random_mixture(rng, UNIT), random_mixture(rng, UNIT)
        a = check_n_sufficient(F, G, OrderParams(1.0, UNIT, n=1))
        b = check_sosd(F, G, UNIT)
        assert a.outcome == b.outcome and a.margin == b.margin


def test_n2_delegates_to_two_sufficient():
    v = check_n_sufficient(U01, BIN3, OrderParams(2.0, UNIT, n=2))
    assert v.dominates and v.condition_id.startswith("two-sufficient")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_identical_pair_any_n(n):
    F = Distribution(0, 1, atoms=((0.2, 0.5),), segments=((0.3, 0.9, 0.5),))
    v = check_n_sufficient(F, F, OrderParams(float(n), UNIT, n=n, grid_points=16))
    assert v.dominates and v.margin == pytest.approx(0.0, abs=1e-12)


def test_n_above_four_rejected():
    with pytest.raises(DomainError):
        check_n_sufficient(U01, BIN3, OrderParams(5.0, UNIT, n=5))


def test_n3_witness_is_a_real_violation():
    v = check_n_sufficient(BIN3, U01, OrderParams(3.0, UNIT, n=3, grid_points=24))
    assert v.fails
    c = v.witness
    assert product_hinge_moment(BIN3, c) - product_hinge_moment(U01, c) > 1e-9


def test_n3_dominance_example3():
    # x -> (1-x)^3 hinge products are dominated as well for this pair
    v = check_n_sufficient(U01, BIN3, OrderParams(3.0, UNIT, n=3, grid_points=24))
    assert v.dominates


def test_default_order_is_floor_alpha():
    assert OrderParams(2.7, UNIT).order == 2
    assert OrderParams(1.0, UNIT).order == 1


@pytest.mark.parametrize("kw", [{"alpha": 0.5}, {"grid_points": 1}, {"tolerance": -1.0}])
def test_params_validation(kw):
    base = {"alpha": 2.0, "bounds": UNIT}
    with pytest.raises(DomainError):
        OrderParams(**{**base, **kw})


# -- translation -------------------------------------------------------------

def test_translation_invariance_random():
    for seed in range(100):
        rng = np.random.default_rng(seed)
        F, G = random_mixture(rng, UNIT), random_mixture(rng, UNIT)
        t = float(rng.uniform(-10, 10))
        B = IntervalBounds(t, 1 + t)
        for chk in (check_sosd, check_two_sufficient):
            v0 = chk(F, G, UNIT)
            v1 = chk(F.shift(t), G.shift(t), B)
            assert v0.outcome == v1.outcome
            assert v1.margin == pytest.approx(v0.margin, abs=1e-9)


# -- closed-form special cases ---------------------------------------------------

def test_uniform_pair_examples():
    assert uniform_pair_threshold(0.0, 0.2, 0.6) == pytest.approx(THRESHOLD, abs=1e-15)
    v = check_uniform_pair(0.0, 0.9, 0.2, 0.6)
    assert v.dominates and v.margin == pytest.approx(THRESHOLD - 0.9)
    assert check_uniform_pair(0.0, 1.0, 0.2, 0.6).outcome is Outcome.FAILS_AT
    at = check_uniform_pair(0.0, THRESHOLD, 0.2, 0.6)
    assert at.dominates and at.margin == pytest.approx(0.0, abs=1e-15)


def test_uniform_pair_threshold_formula_matches_exact_check_near_flip():
    for b1 in (THRESHOLD - 1e-6, THRESHOLD + 1e-6):
        v = check_two_sufficient(Distribution.uniform(0.2, 0.6, 0, b1), Distribution.uniform(0, b1),
                                 IntervalBounds(0, b1))
        assert v.dominates == (b1 < THRESHOLD)


def test_uniform_pair_ordering_and_sosd_route():
    with pytest.raises(DomainError):
        check_uniform_pair(0.0, 0.5, 0.2, 0.6)
    v = check_uniform_pair(0.0, 1.0, 0.45, 0.55)
    assert v.dominates and v.details["route"] == "sosd"


def test_uniform_pair_agrees_with_exact_check():
    for seed in range(50):
        a1, b1, a2, b2 = uniform_pair_tuple(seed)
        v = check_uniform_pair(a1, b1, a2, b2)
        w = check_two_sufficient(Distribution.uniform(a2, b2, a1, b1), Distribution.uniform(a1, b1),
                                 IntervalBounds(a1, b1))
        assert v.outcome == w.outcome


def test_two_point_examples():
    v = check_two_point(0.6, 1.0, 1.6, 2.0, 0.5, 0.9)
    assert v.dominates and v.margin == pytest.approx(0.16, abs=1e-12)
    same = check_two_point(0.2, 0.2, 0.8, 0.8, 0.4, 0.4)
    assert same.dominates and same.margin == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DomainError):
        check_two_point(0, 0.1, 0.5, 1, 1.2, 0.5)


def test_two_point_mean_condition_gives_inconclusive():
    v = check_two_point(0.0, 0.5, 0.5, 1.0, 0.9, 0.1)
    assert v.outcome is Outcome.INCONCLUSIVE


def test_two_point_agrees_with_exact_check():
    for seed in range(100):
        x1, x2, x3, x4, p, q = two_point_tuple(seed)
        v = check_two_point(x1, x2, x3, x4, p, q)
        X, Y = two_point_distributions(x1, x2, x3, x4, p, q)
        w = check_two_sufficient(Y, X, IntervalBounds(x1, x4))
        assert v.outcome == w.outcome
        assert (v.margin >= 0) == w.dominates


# -- support shrinking ---------------------------------------------------------

def test_shrink_support_keeps_dominance():
    # a 2-sufficient pair on [0, 1] whose supports fit inside [0, 0.8]
    F = Distribution.point(0.4, 0, 1)
    G = Distribution.discrete([0, 0.8], [0.5, 0.5], 0, 1)
    assert check_two_sufficient(F, G, UNIT).dominates
    for bn in (0.8, 0.9, 1.0):
        v = shrink_support(F, G, UNIT, bn)
        assert v.dominates
        w = check_two_sufficient(F.with_bounds(0, bn), G.with_bounds(0, bn), IntervalBounds(0, bn))
        assert v.outcome == w.outcome and v.margin == pytest.approx(w.margin, abs=1e-12)


def test_shrink_support_property():
    rng = np.random.default_rng(7)
    F, G = two_sufficient_pair(3, IntervalBounds(0, 0.6))
    F, G = F.with_bounds(0, 1), G.with_bounds(0, 1)
    for _ in range(10):
        bn = float(rng.uniform(0.6, 1.0))
        if check_two_sufficient(F, G, UNIT).dominates:
            assert shrink_support(F, G, UNIT, bn).dominates


def test_shrink_support_errors():
    with pytest.raises(PreconditionError):
        shrink_support(BIN3, U01, UNIT, 0.5)
    with pytest.raises(DomainError):
        shrink_support(U01, BIN3, UNIT, 0.5)
