import math
import warnings

import numpy as np
import pytest

from alphaorder.distribution import Distribution, DomainError, IntervalBounds
from alphaorder.functions import HingePowerFunction, SmoothUtility, crra, crra_quadratic, integrate, polynomial
from alphaorder.oracle import check_alpha, elasticity_check, oracle_dominance, prudence_ratio_check, violation
from alphaorder.orders import Outcome

UNIT = IntervalBounds(0.0, 1.0)


def example1(lam, alpha):
    F = Distribution.point(1 - lam, 0, 1)
    G = Distribution.discrete([0, 1], [lam ** alpha, 1 - lam ** alpha], 0, 1)
    return F, G


@pytest.mark.parametrize("lam,alpha", [(0.5, 2.0), (0.4, 1.5), (0.3, 3.0), (0.7, 1.2)])
def test_example1_is_not_refuted(lam, alpha):
    F, G = example1(lam, alpha)
    v = oracle_dominance(F, G, alpha, UNIT, samples=300)
    assert v.outcome is Outcome.INCONCLUSIVE
    assert v.details["max_violation"] <= 1e-9


@pytest.mark.parametrize("lam,alpha", [(0.5, 2.0), (0.4, 1.5), (0.3, 3.0)])
def test_example1_swapped_is_refuted(lam, alpha):
    F, G = example1(lam, alpha)
    v = oracle_dominance(G, F, alpha, UNIT, samples=300)
    assert v.outcome is Outcome.FAILS_AT
    fn = HingePowerFunction.from_dict(v.details["function"])
    # the witness function really ranks the swapped pair the other way
    assert integrate(fn, G) < integrate(fn, F)
    assert violation(fn, G, F) == pytest.approx(-v.margin, rel=1e-12)


def test_example1_extremal_function_is_tight():
    lam, alpha = 0.4, 2.5
    F, G = example1(lam, alpha)
    fn = HingePowerFunction(alpha, UNIT, ((1.0, 1.0),))
    assert integrate(fn, F) == pytest.approx(integrate(fn, G), abs=1e-14)


def test_identical_pair_has_zero_violation():
    F = Distribution(0, 1, atoms=((0.3, 0.4),), segments=((0.1, 0.8, 0.6),))
    v = oracle_dominance(F, F, 2.0, UNIT, samples=200)
    assert v.outcome is Outcome.INCONCLUSIVE
    assert abs(v.details["max_violation"]) <= 1e-15


def test_oracle_is_deterministic_in_seed():
    F, G = example1(0.5, 2.0)
    a = oracle_dominance(G, F, 2.0, UNIT, samples=100, seed=5)
    b = oracle_dominance(G, F, 2.0, UNIT, samples=100, seed=5)
    assert a.margin == b.margin and a.details == b.details


def test_oracle_rejects_zero_samples():
    with pytest.raises(DomainError):
        oracle_dominance(*example1(0.5, 2.0), 2.0, UNIT, samples=0)


def test_check_alpha_sandwich():
    F, G = example1(0.5, 2.0)
    v = check_alpha(F, G, 2.0, UNIT)
    assert v.dominates and v.details["certified_by_n"] == 2
    # on [0, 1] this pair sits strictly between the orders of 1 and 2
    w = check_alpha(F, G, 1.5, UNIT)
    assert w.outcome is Outcome.FAILS_AT and w.details["tried"] == {1: "FailsAt"}
    assert check_alpha(G, F, 3.0, UNIT).outcome is Outcome.FAILS_AT


# -- smooth membership ------------------------------------------------------------

def test_crra_quadratic_passes_prudence_only():
    B = IntervalBounds(0.1, 10.0)
    u = crra_quadratic(1.0, 10.0)
    assert prudence_ratio_check(u, 2.0, B)
    # u'' vanishes at the top, so u itself is not in the generator set
    res = elasticity_check(u, 2.0, B)
    assert not res and res.worst_x > 9.9


def test_pure_crra_fails_prudence_ratio_near_the_top():
    B = IntervalBounds(0.1, 10.0)
    res = prudence_ratio_check(crra(1.0), 2.0, B)
    assert not res and res.worst_x > 5.0
    assert res.threshold == pytest.approx(0.5)


def test_elasticity_check_on_hinge_power_family():
    # -(b - x)^k is in the generator set exactly for k >= alpha
    B = IntervalBounds(0.0, 1.0)
    assert elasticity_check(SmoothUtility("power", {"k": 3.0, "b": 1.0}), 3.0, B)
    assert elasticity_check(SmoothUtility("power", {"k": 3.0, "b": 1.0}), 2.0, B)
    assert not elasticity_check(SmoothUtility("power", {"k": 2.0, "b": 1.0}), 3.0, B)


def test_extremal_quadratic_meets_bound_with_equality():
    res = elasticity_check(SmoothUtility("power", {"k": 2.0, "b": 1.0}), 2.0, UNIT)
    assert res and res.worst_ratio == pytest.approx(0.5, abs=1e-12)


def test_linear_utility_fails_elasticity():
    res = elasticity_check(polynomial([0.0, 1.0]), 2.0, UNIT)
    assert not res and res.worst_ratio == 0.0


def test_linear_utility_fails_prudence_with_warning():
    u = polynomial([0.0, 1.0])
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        res = prudence_ratio_check(u, 2.0, IntervalBounds(0.0, 1.0))
    assert not res and res.skipped == 2000
    assert any(issubclass(w.category, RuntimeWarning) for w in rec)


def test_alpha_one_threshold_accepts_any_concave():
    res = elasticity_check(SmoothUtility("exponential", {"theta": 2.0}), 1.0, UNIT)
    assert res and res.threshold == 0.0
    assert math.isfinite(res.worst_ratio)
