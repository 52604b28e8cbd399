"""Hermite-Hadamard bounds for 2-convex decreasing functions, and the uniform-pair bridge."""

from __future__ import annotations

import logging
import math

from ..distribution import Distribution, DomainError, IntervalBounds
from ..functions import CONVEX_DECREASING, HingePowerFunction, integrate
from ..oracle import oracle_dominance
from ..orders import check_uniform_pair

log = logging.getLogger(__name__)

T_MIN = 1.0 / 3.0
GAMMA_MIN = 2.0 / (3.0 + math.sqrt(3.0))
HH_TOL = 1e-9


def hh_values(f: HingePowerFunction, t: float, gamma: float) -> dict:
    """Point value, mean and chord value entering the two bounds."""
    a, b = f.bounds.a, f.bounds.b
    mean = integrate(f, Distribution.uniform(a, b))
    return {
        "point": float(f(gamma * b + (1.0 - gamma) * a)),
        "mean": float(mean),
        "chord": t * float(f(a)) + (1.0 - t) * float(f(b)),
    }


def hh_bounds_check(f: HingePowerFunction, t: float, gamma: float) -> tuple[bool, bool]:
    """``(f(gamma b + (1-gamma) a) <= mean f, mean f <= t f(a) + (1-t) f(b))``.

    Holds for every 2-convex decreasing ``f`` once ``t >= 1/3`` and
    ``gamma >= 2/(3+sqrt 3)``; below those constants the claim is false in
    general and the call is refused. The mean is computed exactly.
    """
    if f.orientation != CONVEX_DECREASING or f.alpha != 2:
        raise DomainError("need a convex-decreasing hinge-power function with alpha = 2")
    if not T_MIN <= t <= 1.0:
        raise DomainError(f"t={t} outside [1/3, 1]")
    if not GAMMA_MIN <= gamma <= 1.0:
        raise DomainError(f"gamma={gamma} outside [{GAMMA_MIN:.6f}, 1]")
    v = hh_values(f, t, gamma)
    return bool(v["point"] <= v["mean"] + HH_TOL), bool(v["mean"] <= v["chord"] + HH_TOL)


def check_uniform_pair_expectation_bridge(a1: float, b1: float, a2: float, b2: float,
                                          alpha: float = 2.0, samples: int = 500,
                                          seed: int = 0) -> dict:
    """Cross-check the closed-form uniform-pair verdict against the sampling oracle.

    A closed-form Dominates must see no oracle counterexample; a clear
    FailsAt should eventually produce one (best effort, logged only).
    """
    closed = check_uniform_pair(a1, b1, a2, b2)
    bounds = IntervalBounds(a1, b1)
    oracle = oracle_dominance(Distribution.uniform(a2, b2, a1, b1), Distribution.uniform(a1, b1),
                              alpha, bounds, samples, seed=seed)
    consistent = not (closed.dominates and oracle.fails)
    if closed.fails and closed.margin < -1e-6 and not oracle.fails:
        log.info("no oracle counterexample for (%g, %g, %g, %g) in %d samples",
                 a1, b1, a2, b2, samples)
    return {
        "closed_form": closed.to_dict(),
        "oracle": oracle.to_dict(),
        "route": closed.details.get("route"),
        "consistent": consistent,
    }
