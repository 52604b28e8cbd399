"""Dominance checks: first/second order, n-sufficient, 2-concave, closed-form special cases.

Sign conventions: ``F`` dominates ``G`` when ``E_F[u] >= E_G[u]`` for
every generator ``u``. For the integral conditions the *slack* at ``c``
is the amount by which the required inequality holds; ``margin`` is the
worst slack. Because every integral vanishes at ``c = a``, a dominating
pair of this kind has margin exactly 0 (up to rounding); closed-form
checks (uniform pair, two-point) report a signed threshold slack instead.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import optimize

from .distribution import (
    Distribution,
    DomainError,
    IntervalBounds,
    cdf,
    cdf_integral,
    cdf_double_integral,
    expectation,
    product_hinge_moments,
)

DEFAULT_TOL = 1e-9
MAX_N = 4


class Outcome(str, enum.Enum):
    DOMINATES = "Dominates"
    FAILS_AT = "FailsAt"
    INCONCLUSIVE = "Inconclusive"


class PreconditionError(ValueError):
    """A hypothesis required by a check or solver does not hold."""


@dataclass
class OrderVerdict:
    outcome: Outcome
    margin: float
    condition_id: str
    witness: Optional[tuple] = None
    boundary: bool = False
    details: dict = field(default_factory=dict)

    @property
    def dominates(self) -> bool:
        return self.outcome is Outcome.DOMINATES

    @property
    def fails(self) -> bool:
        return self.outcome is Outcome.FAILS_AT

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "margin": self.margin,
            "condition_id": self.condition_id,
            "witness": None if self.witness is None else list(self.witness),
            "boundary": self.boundary,
            "details": self.details,
        }


@dataclass(frozen=True)
class OrderParams:
    alpha: float
    bounds: IntervalBounds
    n: Optional[int] = None
    grid_points: int = 64
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.alpha >= 1:
            raise DomainError(f"alpha must be >= 1, got {self.alpha}")
        if self.n is not None and self.n < 1:
            raise DomainError("n must be a positive integer")
        if self.grid_points < 2:
            raise DomainError("grid_points must be >= 2")
        if self.tolerance < 0:
            raise DomainError("tolerance must be nonnegative")

    @property
    def order(self) -> int:
        # sufficient conditions of order n certify every alpha >= n
        return self.n if self.n is not None else max(1, math.floor(self.alpha + 1e-12))


def _rebase(F: Distribution, bounds: IntervalBounds) -> Distribution:
    if (F.a, F.b) == (bounds.a, bounds.b):
        return F
    try:
        return F.with_bounds(bounds.a, bounds.b)
    except DomainError as exc:
        raise DomainError(f"distribution not supported in [{bounds.a}, {bounds.b}]: {exc}") from None


def _verdict_from_sup(sup: float, where: float, cond: str, tol: float, **details) -> OrderVerdict:
    margin = 0.0 - sup
    if sup > tol:
        return OrderVerdict(Outcome.FAILS_AT, margin, cond, (where,), details=details)
    return OrderVerdict(Outcome.DOMINATES, margin, cond, None, boundary=sup > 0, details=details)


# -- piecewise-polynomial sign resolution --------------------------------

def piecewise_extrema(func: Callable[[float], float], knots, degree: int = 3):
    """Exact min and max of a continuous piecewise polynomial of bounded degree.

    ``func`` is a polynomial of degree <= ``degree`` between consecutive
    ``knots``. Each piece is interpolated only to locate critical points;
    the extremum is ``func`` itself evaluated at piece endpoints and at
    real derivative roots.
    """
    knots = np.unique(np.asarray(knots, dtype=float))
    cands = list(knots)
    cheb = np.cos(np.pi * (np.arange(degree + 1) + 0.5) / (degree + 1))
    for t0, t1 in zip(knots[:-1], knots[1:]):
        if t1 - t0 <= 0:
            continue
        mid, half = 0.5 * (t0 + t1), 0.5 * (t1 - t0)
        # clip so rounding never steps outside the piece
        ys = np.array([func(min(max(mid + half * t, t0), t1)) for t in cheb])
        if not np.any(ys):
            continue
        # interpolate in the reference variable t in [-1, 1]; nodes fixed so always well conditioned
        coef = np.polynomial.chebyshev.chebfit(cheb, ys, degree)
        for r in np.polynomial.chebyshev.chebroots(np.polynomial.chebyshev.chebder(coef)):
            if abs(r.imag) <= 1e-9 and -1.0 < r.real < 1.0:
                cands.append(min(max(float(mid + half * r.real), t0), t1))
    vals = np.array([func(x) for x in cands])
    imin = int(np.argmin(vals))
    imax = int(np.argmax(vals))
    return (float(vals[imin]), float(cands[imin])), (float(vals[imax]), float(cands[imax]))


class _Difference:
    """Integral differences between ``F`` and ``G`` on shared bounds."""

    def __init__(self, F: Distribution, G: Distribution, bounds: IntervalBounds):
        self.F = _rebase(F, bounds)
        self.G = _rebase(G, bounds)
        self.bounds = bounds
        self.knots = np.union1d(self.F.breakpoints(), self.G.breakpoints())

    def dI(self, c: float) -> float:
        return cdf_integral(self.F, c) - cdf_integral(self.G, c)

    def dJ(self, c: float) -> float:
        return cdf_double_integral(self.F, c) - cdf_double_integral(self.G, c)

    def ineq1(self, c: float) -> float:
        return (self.bounds.b - c) * self.dI(c) + 2.0 * self.dJ(c)


def condition_extrema(F: Distribution, G: Distribution, bounds: IntervalBounds) -> dict:
    """Min/max (value, location) of the left-hand sides entering the checks."""
    d = _Difference(F, G, bounds)
    out = {}
    for name, fn in (("sosd", d.dI), ("ineq1", d.ineq1), ("ineq2", d.dJ)):
        (lo, at_lo), (hi, at_hi) = piecewise_extrema(fn, d.knots, 3)
        out[name] = {"min": lo, "argmin": at_lo, "max": hi, "argmax": at_hi}
    return out


# -- checks ----------------------------------------------------------------

def check_fosd(F: Distribution, G: Distribution, bounds: IntervalBounds,
               tolerance: float = DEFAULT_TOL, grid_points: int = 64) -> OrderVerdict:
    """First-order dominance: ``F(x) <= G(x)`` everywhere.

    ``F - G`` is linear between breakpoints, so checking both one-sided
    limits at every breakpoint is exact; the extra grid is a cheap guard.
    """
    F = _rebase(F, bounds)
    G = _rebase(G, bounds)
    pts = np.union1d(np.union1d(F.breakpoints(), G.breakpoints()),
                     np.linspace(bounds.a, bounds.b, grid_points))
    worst, where = -math.inf, bounds.a
    for x in pts:
        for diff in (cdf(F, x) - cdf(G, x), F.cdf_left(x) - G.cdf_left(x)):
            if diff > worst:
                worst, where = diff, float(x)
    return _verdict_from_sup(worst, where, "fosd", tolerance)


def check_sosd(F: Distribution, G: Distribution, bounds: IntervalBounds,
               tolerance: float = DEFAULT_TOL) -> OrderVerdict:
    """Second-order dominance: ``int_a^c F <= int_a^c G`` for all ``c``."""
    d = _Difference(F, G, bounds)
    _, (sup, where) = piecewise_extrema(d.dI, d.knots, 2)
    return _verdict_from_sup(sup, where, "sosd", tolerance)


def check_two_sufficient(F: Distribution, G: Distribution, bounds: IntervalBounds,
                         tolerance: float = DEFAULT_TOL) -> OrderVerdict:
    """Exact test of the 2-sufficient order through its two integral inequalities.

    ``(b - c) dI(c) + 2 dJ(c) <= 0`` and ``dJ(c) <= 0`` for all ``c``,
    where ``dI``/``dJ`` are differences of the first/second CDF
    antiderivatives. Both are piecewise cubic; see :func:`piecewise_extrema`.
    """
    d = _Difference(F, G, bounds)
    _, (sup1, at1) = piecewise_extrema(d.ineq1, d.knots, 3)
    _, (sup2, at2) = piecewise_extrema(d.dJ, d.knots, 3)
    details = {
        "two-sufficient-ineq1": {"worst_slack": 0.0 - sup1, "at": at1},
        "two-sufficient-ineq2": {"worst_slack": 0.0 - sup2, "at": at2},
    }
    if sup1 >= sup2:
        return _verdict_from_sup(sup1, at1, "two-sufficient-ineq1", tolerance, **details)
    return _verdict_from_sup(sup2, at2, "two-sufficient-ineq2", tolerance, **details)


def check_two_concave_necessary(F: Distribution, G: Distribution, bounds: IntervalBounds,
                                tolerance: float = DEFAULT_TOL) -> OrderVerdict:
    """Squared-hinge condition alone, keeping its one-sided meaning.

    A violation is definitive (``-max(c - x, 0)^2`` is itself a 2-concave
    generator). If it holds, the pair dominates when the companion
    inequality also holds; otherwise the result is Inconclusive.
    """
    full = check_two_sufficient(F, G, bounds, tolerance)
    second = full.details["two-sufficient-ineq2"]
    first = full.details["two-sufficient-ineq1"]
    if -second["worst_slack"] > tolerance:
        return OrderVerdict(Outcome.FAILS_AT, second["worst_slack"], "two-sufficient-ineq2",
                            (second["at"],), details=full.details)
    if -first["worst_slack"] > tolerance:
        return OrderVerdict(Outcome.INCONCLUSIVE, first["worst_slack"], "two-sufficient-ineq1",
                            (first["at"],), details=full.details)
    return OrderVerdict(Outcome.DOMINATES, full.margin, full.condition_id,
                        boundary=full.boundary, details=full.details)


def _sorted_grid(points: np.ndarray, n: int) -> np.ndarray:
    idx = np.array(list(itertools.combinations_with_replacement(range(len(points)), n)))
    return points[idx]


def check_n_sufficient(F: Distribution, G: Distribution, params: OrderParams) -> OrderVerdict:
    """n-sufficient order: ``E_F[prod max(c_i - X, 0)] <= E_G[...]`` for all ``c``.

    ``n = 1`` and ``n = 2`` are decided exactly. For ``n = 3, 4`` the
    condition is scanned over sorted hinge vectors drawn from a grid
    merged with the breakpoints, then the worst cells are polished by a
    bounded local search; the reported margin says how close the scan came.
    """
    n = params.order
    bounds, tol = params.bounds, params.tolerance
    if n == 1:
        return check_sosd(F, G, bounds, tol)
    if n == 2:
        return check_two_sufficient(F, G, bounds, tol)
    if n > MAX_N:
        raise DomainError(f"n={n} exceeds the supported maximum of {MAX_N}")
    F = _rebase(F, bounds)
    G = _rebase(G, bounds)
    pts = np.union1d(np.linspace(bounds.a, bounds.b, params.grid_points),
                     np.union1d(F.breakpoints(), G.breakpoints()))
    cs = _sorted_grid(pts, n)
    slack = product_hinge_moments(G, cs) - product_hinge_moments(F, cs)
    order = np.argsort(slack, kind="stable")
    best_val = float(slack[order[0]])
    best_c = cs[order[0]].copy()

    def objective(c):
        c = np.clip(c, bounds.a, bounds.b).reshape(1, -1)
        return float(product_hinge_moments(G, c)[0] - product_hinge_moments(F, c)[0])

    for i in order[:5]:
        res = optimize.minimize(objective, cs[i], method="L-BFGS-B",
                                bounds=[(bounds.a, bounds.b)] * n)
        if res.fun < best_val:
            best_val, best_c = float(res.fun), np.clip(res.x, bounds.a, bounds.b)
    best_c = np.sort(best_c)
    verdict = _verdict_from_sup(-best_val, 0.0, "grid-hinge", tol,
                                grid_size=int(len(cs)), n=n)
    if verdict.fails:
        verdict.witness = tuple(float(v) for v in best_c)
    return verdict


def uniform_pair_threshold(a1: float, a2: float, b2: float) -> float:
    """Largest ``b1`` for which ``U[a2, b2]`` 2-concave-dominates ``U[a1, b1]``."""
    disc = a2 * a2 + 10.0 * a2 * b2 + b2 * b2 - 12.0 * a1 * (a2 + b2 - a1)
    return (3.0 * (a2 + b2) - 2.0 * a1 + math.sqrt(disc)) / 4.0


def check_uniform_pair(a1: float, b1: float, a2: float, b2: float) -> OrderVerdict:
    """Does ``U[a2, b2]`` dominate ``U[a1, b1]`` in the 2-concave order on ``[a1, b1]``?

    When the narrow uniform has the larger (or equal) mean the answer is
    already yes by second-order dominance, and that route is taken.
    """
    if not a1 < a2 < b2 < b1:
        raise DomainError(f"need a1 < a2 < b2 < b1, got ({a1}, {a2}, {b2}, {b1})")
    if (a1 + b1) / 2.0 <= (a2 + b2) / 2.0:
        bounds = IntervalBounds(a1, b1)
        v = check_sosd(Distribution.uniform(a2, b2, a1, b1), Distribution.uniform(a1, b1), bounds)
        v.details["route"] = "sosd"
        return v
    thr = uniform_pair_threshold(a1, a2, b2)
    margin = thr - b1
    outcome = Outcome.DOMINATES if margin >= 0 else Outcome.FAILS_AT
    return OrderVerdict(outcome, margin, "uniform-threshold",
                        None if margin >= 0 else (b1,), details={"threshold": thr, "route": "closed-form"})


def two_point_distributions(x1, x2, x3, x4, p, q):
    """``(X, Y)``: X = {x1: p, x3: 1-p}, Y = {x2: q, x4: 1-q}, both on ``[x1, x4]``."""
    X = Distribution(x1, x4, atoms=((x1, p), (x3, 1.0 - p)))
    Y = Distribution(x1, x4, atoms=((x2, q), (x4, 1.0 - q)))
    return X, Y


def check_two_point(x1: float, x2: float, x3: float, x4: float, p: float, q: float) -> OrderVerdict:
    """Closed-form 2-concave comparison of two-point lotteries.

    Returns Dominates when ``Y = {x2: q, x4: 1-q}`` dominates
    ``X = {x1: p, x3: 1-p}`` on ``[x1, x4]``; valid only when ``X`` has the
    larger mean, otherwise Inconclusive. Margin is
    ``p(x4-x1)^2 + (1-p)(x4-x3)^2 - q(x4-x2)^2``.
    """
    for name, v in (("p", p), ("q", q)):
        if not 0.0 <= v <= 1.0:
            raise DomainError(f"{name}={v} is not a probability")
    if not (x1 <= min(x2, x3) and max(x2, x3) <= x4 and x1 < x4):
        raise DomainError("need x1 <= x2, x3 <= x4 with x1 < x4")
    margin = p * (x4 - x1) ** 2 + (1 - p) * (x4 - x3) ** 2 - q * (x4 - x2) ** 2
    ev_gap = p * x1 + (1 - p) * x3 - (q * x2 + (1 - q) * x4)
    details = {"mean_gap": ev_gap}
    if ev_gap < 0:
        details["reason"] = "X does not have the higher mean; closed form does not apply"
        return OrderVerdict(Outcome.INCONCLUSIVE, margin, "two-point", details=details)
    if margin >= 0:
        return OrderVerdict(Outcome.DOMINATES, margin, "two-point", details=details)
    return OrderVerdict(Outcome.FAILS_AT, margin, "two-point", (x4,), details=details)


def shrink_support(F: Distribution, G: Distribution, bounds: IntervalBounds, b_new: float,
                   tolerance: float = DEFAULT_TOL) -> OrderVerdict:
    """Re-run the 2-sufficient check on ``[a, b_new]`` for a dominating pair.

    2-sufficient dominance on ``[a, b]`` carries over to every smaller
    right endpoint; a non-dominating result here means a numerical fault
    and raises.
    """
    if not bounds.a < b_new <= bounds.b:
        raise DomainError(f"b_new={b_new} not in ({bounds.a}, {bounds.b}]")
    base = check_two_sufficient(F, G, bounds, tolerance)
    if not base.dominates:
        raise PreconditionError("pair does not dominate on the original interval")
    inner = IntervalBounds(bounds.a, b_new)
    verdict = check_two_sufficient(F, G, inner, tolerance)
    if not verdict.dominates:
        raise RuntimeError(f"dominance lost when shrinking to [{bounds.a}, {b_new}]: {verdict}")
    return verdict


def mean_gap(F: Distribution, G: Distribution) -> float:
    return expectation(F) - expectation(G)
