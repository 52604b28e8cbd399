"""Brute-force refutation oracle and smooth-membership checks.

The oracle samples hinge-power members of the generator set and looks
for one that ranks ``G`` above ``F``. It can refute dominance but never
confirm it: for non-integer alpha the sampled family is not known to be
dense in the generator set.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .distribution import Distribution, DomainError, IntervalBounds
from .functions import HingePowerFunction, SmoothUtility, gap_expectation, sample
from .orders import (
    DEFAULT_TOL,
    MAX_N,
    OrderParams,
    OrderVerdict,
    Outcome,
    _rebase,
    check_n_sufficient,
)

log = logging.getLogger(__name__)

ORACLE_TOL = 1e-9


def _function_stream(alpha, bounds, samples, max_knots, seed):
    root = np.random.SeedSequence(seed)
    for child in root.spawn(samples):
        rng = np.random.default_rng(child)
        m = int(rng.integers(1, max_knots + 1))
        yield sample(alpha, bounds, m, rng)


def oracle_dominance(F: Distribution, G: Distribution, alpha: float, bounds: IntervalBounds,
                     samples: int = 500, max_knots: int = 8, seed: int = 0,
                     tolerance: float = ORACLE_TOL) -> OrderVerdict:
    """Search sampled generators for one with ``E_F[u] < E_G[u]``.

    Each candidate is scaled so that ``u(b) - u(a) = 1`` (the generator set
    is a cone), making the violation comparable across functions and
    intervals. Returns FailsAt carrying the largest violation found, or
    Inconclusive; never Dominates.
    """
    if samples < 1:
        raise DomainError("need at least one sample")
    F = _rebase(F, bounds)
    G = _rebase(G, bounds)
    worst = -math.inf
    worst_fn = None
    distinct = set()
    for fn in _function_stream(alpha, bounds, samples, max_knots, seed):
        scale = float(fn.gap(bounds.a))
        if scale == 0.0:
            continue
        distinct.add(round(math.log10(scale), 1))
        # E_G[u] - E_F[u] = E_F[gap] - E_G[gap]
        viol = (gap_expectation(fn, F) - gap_expectation(fn, G)) / scale
        if viol > worst:
            worst, worst_fn = viol, fn
    log.debug("oracle: %d samples, %d distinct gap scales", samples, len(distinct))
    worst = max(worst, 0.0) if worst_fn is None else worst
    details = {"samples": samples, "max_violation": worst, "alpha": alpha, "seed": seed}
    if worst_fn is not None and worst > tolerance:
        details["function"] = worst_fn.to_dict()
        return OrderVerdict(Outcome.FAILS_AT, -worst, "oracle",
                            tuple(c for c, _ in worst_fn.knots), details=details)
    details["reason"] = f"no counterexample in {samples} samples"
    return OrderVerdict(Outcome.INCONCLUSIVE, 0.0 - max(worst, 0.0), "oracle", details=details)


def violation(fn: HingePowerFunction, F: Distribution, G: Distribution) -> float:
    """Normalised ``E_G[u] - E_F[u]`` for a concave-increasing ``fn``."""
    scale = float(fn.gap(fn.bounds.a))
    return (gap_expectation(fn, F) - gap_expectation(fn, G)) / scale


def check_alpha(F: Distribution, G: Distribution, alpha: float, bounds: IntervalBounds,
                tolerance: float = DEFAULT_TOL, grid_points: int = 64, samples: int = 500,
                max_knots: int = 8, seed: int = 0) -> OrderVerdict:
    """Sandwich decision for the alpha-concave order.

    Dominates if an n-sufficient check succeeds for some ``n <= alpha``
    (dominance of order ``n`` carries to every larger alpha); FailsAt if
    the oracle finds a counterexample at ``alpha``; Inconclusive otherwise.
    """
    top = min(MAX_N, max(1, math.floor(alpha + 1e-12)))
    tried = {}
    for n in range(1, top + 1):
        v = check_n_sufficient(F, G, OrderParams(alpha, bounds, n=n, grid_points=grid_points,
                                                 tolerance=tolerance))
        tried[n] = v.outcome.value
        if v.dominates:
            v.details["certified_by_n"] = n
            v.details["tried"] = tried
            return v
    ov = oracle_dominance(F, G, alpha, bounds, samples, max_knots, seed)
    ov.details["tried"] = tried
    return ov


# -- smooth membership -------------------------------------------------------

@dataclass
class SmoothCheck:
    ok: bool
    worst_x: float
    worst_ratio: float
    threshold: float
    skipped: int = 0

    def __bool__(self):
        return self.ok


def _interior(bounds: IntervalBounds, grid: int) -> np.ndarray:
    return np.linspace(bounds.a, bounds.b, grid + 2)[1:-1]


def _ratio_check(num, den, xs, threshold, what) -> SmoothCheck:
    bad = den == 0
    skipped = int(np.count_nonzero(bad))
    if skipped:
        warnings.warn(f"{what}: ratio undefined at {skipped} grid points; skipped", RuntimeWarning)
    ratio = np.where(bad, np.inf, num / np.where(bad, 1.0, den))
    i = int(np.argmin(ratio))
    # with nothing defined there is no evidence of membership
    ok = skipped < len(xs) and ratio[i] >= threshold - 1e-9
    return SmoothCheck(bool(ok), float(xs[i]), float(ratio[i]),
                       threshold, skipped)


def elasticity_check(u: SmoothUtility, alpha: float, bounds: IntervalBounds,
                     grid: int = 2000) -> SmoothCheck:
    """``v v'' / v'^2 >= (alpha-1)/alpha`` on the interior, with ``v = u - u(b)``.

    For a smooth increasing ``u`` this is membership in the alpha-concave
    generator set: the elasticity of marginal utility with respect to
    (normalised) utility is bounded below.
    """
    xs = _interior(bounds, grid)
    v = u(xs) - float(u(bounds.b))
    d1 = u.d1(xs)
    return _ratio_check(v * u.d2(xs), d1 * d1, xs, (alpha - 1.0) / alpha, "elasticity_check")


def prudence_ratio_check(u: SmoothUtility, alpha: float, bounds: IntervalBounds,
                         grid: int = 2000) -> SmoothCheck:
    """``(u'(x) - u'(b)) u'''(x) / u''(x)^2 >= (alpha-1)/alpha`` on the interior.

    Equivalent to ``-u'`` lying in the alpha-concave generator set, i.e.
    marginal utility being alpha-convex and decreasing on ``[a, b]``.
    """
    xs = _interior(bounds, grid)
    d2 = u.d2(xs)
    num = (u.d1(xs) - float(u.d1(bounds.b))) * u.d3(xs)
    return _ratio_check(num, d2 * d2, xs, (alpha - 1.0) / alpha, "prudence_ratio_check")
