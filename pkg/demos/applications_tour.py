"""Savings, self-protection, the search game and the Hermite-Hadamard bounds."""

from alphaorder import Distribution, IntervalBounds
from alphaorder.applications import (
    GAMMA_MIN,
    T_MIN,
    ProtectionProblem,
    SavingsProblem,
    SearchGame,
    compare_beliefs,
    compare_savings,
    hh_bounds_check,
    self_protection_verdict,
)
from alphaorder.applications.hermite_hadamard import hh_values
from alphaorder.functions import CONVEX_DECREASING, HingePowerFunction, crra_quadratic

print("-- savings --")
F = Distribution.point(0.5, 0, 1)
spread = Distribution.discrete([0, 1], [0.5, 0.5], 0, 1)
p = SavingsProblem(crra_quadratic(2.0, 2.0), wealth=1.0, rate=1.0, income=F)
c = compare_savings(p, F, spread)
print(f"sure income saves {c.s_F:.4f}, a spread saves {c.s_G:.4f}")

tilted = Distribution.discrete([0, 1], [0.25, 0.75], 0, 1)
c = compare_savings(p, F, tilted, strict=False)
print(f"tilted income: saves {c.s_G:.4f}; hypotheses hold on [0, 2]: {c.hypotheses_hold}")

print("-- self-protection --")
for e_x, q in ((0.4, 0.9), (0.35, 0.9), (0.4, 0.95), (0.05, 0.9)):
    v, rec = self_protection_verdict(ProtectionProblem(2.0, 1.0, e_x, 0.0, 0.5, q))
    print(f"e_x={e_x}, q={q}: {v.outcome.value:12s} margin {v.margin:+.4f}  {rec}")

print("-- search game --")
belief = Distribution.discrete([0, 1], [0.16, 0.84], 0, 1)
shifted = Distribution.point(0.6, 0, 1)
cmp = compare_beliefs(SearchGame(1.0, 3.0, 2.0, 2.0, belief), belief, shifted)
print(f"effort {cmp.F.e1:.4f} -> {cmp.F_prime.e1:.4f}; matching lower everywhere: {cmp.pointwise_ok}")

print("-- Hermite-Hadamard --")
f = HingePowerFunction(2.0, IntervalBounds(0, 1), ((1.0, 1.0),), orientation=CONVEX_DECREASING)
print("at the constants:", hh_values(f, T_MIN, GAMMA_MIN), hh_bounds_check(f, T_MIN, GAMMA_MIN))
print("below them:", hh_values(f, 0.3, 0.4))
