"""Two-period consumption-savings under income risk."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from ..distribution import Distribution, DomainError, IntervalBounds
from ..functions import SmoothUtility
from ..oracle import prudence_ratio_check
from ..orders import OrderVerdict, PreconditionError, check_two_sufficient, shrink_support
from ..quadrature import QuadratureError, adaptive_gauss_legendre

SAVINGS_TOL = 1e-8


@dataclass(frozen=True)
class SavingsProblem:
    """Save ``s`` out of wealth ``x``; next period consume ``R s + y`` with ``y ~ income``."""

    utility: SmoothUtility
    wealth: float
    rate: float
    income: Distribution

    def __post_init__(self):
        if not self.wealth > 0:
            raise DomainError(f"wealth must be positive, got {self.wealth}")
        if not self.rate > 0:
            raise DomainError(f"rate must be positive, got {self.rate}")
        if self.income.a < 0:
            raise DomainError("income must be supported on [0, y_max]")

    @property
    def y_max(self) -> float:
        return self.income.b

    @property
    def horizon(self) -> IntervalBounds:
        """``[0, R x + y_max]``, the range of second-period consumption."""
        return IntervalBounds(0.0, self.rate * self.wealth + self.y_max)

    def with_income(self, income: Distribution) -> "SavingsProblem":
        return SavingsProblem(self.utility, self.wealth, self.rate, income)


def _segment_integral(g, lo: float, hi: float) -> float:
    """``int_lo^hi g``; falls back to scipy for endpoint singularities (log or power utility at 0)."""
    try:
        return adaptive_gauss_legendre(g, lo, hi)
    except QuadratureError:
        pass
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            return quad(lambda y: float(g(y)), lo, hi, limit=200, epsabs=1e-12, epsrel=1e-12)[0]
        except IntegrationWarning:
            if -np.inf in (float(g(lo)), float(g(hi))):
                return -np.inf
            raise QuadratureError(f"integral on [{lo}, {hi}] did not converge") from None


def _expect(F: Distribution, g, antiderivative=None) -> float:
    """``E_F[g(Y)]``; on segments uses ``antiderivative`` when given."""
    tot = 0.0
    for at in F.atoms:
        tot += at.p * float(g(at.x))
    for s in F.segments:
        if antiderivative is not None:
            tot += s.p * (float(antiderivative(s.hi)) - float(antiderivative(s.lo))) / s.width
        else:
            tot += s.p * _segment_integral(g, s.lo, s.hi) / s.width
    return tot


def marginal(p: SavingsProblem, s: float) -> float:
    """``d/ds`` of the objective: ``-u'(x - s) + R E[u'(R s + y)]``."""
    u, R = p.utility, p.rate
    with np.errstate(divide="ignore", invalid="ignore"):
        # u is an antiderivative of u', so segments are exact
        future = _expect(p.income, lambda y: u.d1(R * s + y), lambda y: u(R * s + y))
        return float(-u.d1(p.wealth - s) + R * future)


def objective(p: SavingsProblem, s: float) -> float:
    """``u(x - s) + E[u(R s + y)]``."""
    u, R = p.utility, p.rate
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(u(p.wealth - s)) + _expect(p.income, lambda y: u(R * s + y))


def _check_concave(p: SavingsProblem, grid: int = 2001) -> None:
    xs = np.linspace(0.0, p.horizon.b, grid + 1)[1:-1]
    d2 = p.utility.d2(xs)
    d1 = p.utility.d1(xs)
    if np.any(d2 >= 0):
        raise DomainError(f"utility not strictly concave near x={xs[np.argmax(d2 >= 0)]:.6g}")
    if np.any(d1 <= 0):
        raise DomainError(f"utility not increasing near x={xs[np.argmax(d1 <= 0)]:.6g}")


def solve_savings(p: SavingsProblem, tol: float = SAVINGS_TOL) -> float:
    """Optimal savings by bisection on the strictly decreasing marginal."""
    _check_concave(p)
    lo, hi = 0.0, p.wealth
    if marginal(p, lo) <= 0:
        return lo
    if marginal(p, hi) >= 0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if marginal(p, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def grid_savings(p: SavingsProblem, step: float = 1e-4) -> float:
    """Brute-force maximiser of the objective on a uniform grid (an independent check)."""
    n = max(2, int(round(p.wealth / step)) + 1)
    ss = np.linspace(0.0, p.wealth, n)
    vals = np.array([objective(p, s) for s in ss])
    vals[~np.isfinite(vals)] = -np.inf
    return float(ss[int(np.argmax(vals))])


@dataclass
class SavingsComparison:
    s_F: float
    s_G: float
    prudence: object
    dominance: OrderVerdict
    shrunk: Optional[OrderVerdict]
    holds: bool

    @property
    def gap(self) -> float:
        return self.s_G - self.s_F

    @property
    def hypotheses_hold(self) -> bool:
        return bool(self.prudence.ok) and self.dominance.dominates

    def to_dict(self) -> dict:
        return {
            "s_F": self.s_F,
            "s_G": self.s_G,
            "gap": self.gap,
            "prudence_ok": bool(self.prudence.ok),
            "prudence_worst_ratio": self.prudence.worst_ratio,
            "dominance": self.dominance.to_dict(),
            "shrunk": None if self.shrunk is None else self.shrunk.to_dict(),
            "hypotheses_hold": self.hypotheses_hold,
            "s_G_ge_s_F": self.holds,
        }


def compare_savings(p: SavingsProblem, F: Distribution, G: Distribution,
                    tol: float = 1e-6, strict: bool = True) -> SavingsComparison:
    """Savings under a riskier income ``G`` versus ``F``.

    The guarantee ``s_G >= s_F`` needs marginal utility to be 2-convex on
    ``[0, R x + y_max]`` and ``F`` to 2-sufficiently dominate ``G`` on the
    same interval. With ``strict`` a failed hypothesis raises
    PreconditionError naming the check; otherwise both savings levels are
    still computed and the failure is recorded in the result.
    """
    horizon = p.horizon
    pr = prudence_ratio_check(p.utility, 2.0, horizon)
    if strict and not pr.ok:
        raise PreconditionError(
            f"prudence_ratio_check failed at x={pr.worst_x:.6g} (ratio {pr.worst_ratio:.6g} < 0.5)")
    Fh, Gh = F.with_bounds(horizon.a, horizon.b), G.with_bounds(horizon.a, horizon.b)
    dom = check_two_sufficient(Fh, Gh, horizon)
    if strict and not dom.dominates:
        raise PreconditionError(
            f"check_two_sufficient did not certify F over G on [0, {horizon.b:g}]: "
            f"{dom.outcome.value} at c={dom.witness}")
    s_F = solve_savings(p.with_income(F))
    s_G = solve_savings(p.with_income(G))
    shrunk = None
    if dom.dominates:
        # the comparison argument only uses y in [0, R(x - s) + y_max]
        b_new = p.rate * (p.wealth - s_F) + p.y_max
        if b_new > max(F.support_range()[1], G.support_range()[1]):
            shrunk = shrink_support(Fh, Gh, horizon, b_new)
    return SavingsComparison(s_F, s_G, pr, dom, shrunk, s_G >= s_F - tol)
