"""A sure 500,000 against a 55% chance at 1,000,000.

Second-order dominance cannot rank the pair, yet every decision maker
whose utility is 1.152-concave on [0, 1e6] prefers the sure amount.
"""

from alphaorder import Distribution, IntervalBounds, check_alpha, check_sosd, oracle_dominance

B = IntervalBounds(0.0, 1e6)
sure = Distribution.point(5e5, B.a, B.b)
risky = Distribution.discrete([0.0, 1e6], [0.45, 0.55], B.a, B.b)

print("mean of the risky lottery:", 0.55 * 1e6)
v = check_sosd(sure, risky, B)
print("second-order check:", v.outcome.value, "at c =", v.witness)

o = oracle_dominance(sure, risky, 1.152, B, samples=500, seed=0)
print("oracle at alpha = 1.152:", o.outcome.value, f"(largest violation {o.details['max_violation']:.2e})")

# the reverse direction is refuted quickly
r = check_alpha(risky, sure, 1.152, B)
print("risky over sure:", r.outcome.value, "using knots", r.witness)
