"""Two-sided search game with type-dependent search costs.

Player 1 searches with effort ``e1`` at cost ``e1**(m+1)/(m+1)``; a player-2
type ``theta`` searches at cost ``e2**(k+1) / ((k+1)(1-theta)**l)``. The
best response of type ``theta`` is ``e2 = e1**(1/k) (1-theta)**(l/k)``, so
player 1 only cares about ``M = E_F[(1-theta)**(l/k)]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..distribution import Distribution, DomainError, IntervalBounds
from ..oracle import check_alpha
from ..orders import OrderVerdict

MAX_ITER = 1_000_000
STEP_TOL = 1e-12


class ConvergenceError(ArithmeticError):
    """The best-response iteration did not settle within the cap."""


@dataclass(frozen=True)
class SearchGame:
    k: float
    l: float
    alpha: float
    m: float
    belief: Distribution

    def __post_init__(self):
        if not (self.k > 0 and self.l > 0):
            raise DomainError("k and l must be positive")
        if not self.alpha >= 1:
            raise DomainError("alpha must be >= 1")
        if self.l < self.alpha * self.k:
            raise DomainError(f"need l >= alpha*k, got l={self.l}, alpha*k={self.alpha * self.k}")
        if not self.m >= 1:
            raise DomainError("cost exponent m must be >= 1")
        lo, hi = self.belief.support_range()
        if lo < 0 or hi > 1:
            raise DomainError("belief must live on [0, 1]")

    @property
    def exponent(self) -> float:
        return self.l / self.k

    @property
    def mass_at_one(self) -> float:
        return sum(at.p for at in self.belief.atoms if at.x == 1.0)

    def with_belief(self, belief: Distribution) -> "SearchGame":
        return SearchGame(self.k, self.l, self.alpha, self.m, belief)


def match_factor(F: Distribution, r: float) -> float:
    """``E_F[(1-theta)**r]``; a type at ``theta = 1`` contributes 0."""
    tot = 0.0
    for at in F.atoms:
        tot += at.p * (1.0 - at.x) ** r
    for s in F.segments:
        tot += s.p * ((1.0 - s.lo) ** (r + 1) - (1.0 - s.hi) ** (r + 1)) / ((r + 1) * s.width)
    return tot


def best_response(g: SearchGame, e: float, M: float) -> float:
    """Player 1's effort given that player 2 responds to ``e``: solves ``e1**m = e**(1/k) M``."""
    return min(1.0, max(0.0, (e ** (1.0 / g.k) * M) ** (1.0 / g.m)))


@dataclass
class Equilibrium:
    e1: float
    M: float
    game: SearchGame
    iterations: int

    def effort2(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.e1 ** (1.0 / self.game.k) * (1.0 - theta) ** self.game.exponent

    def match(self, theta):
        """Matching probability ``e1 * e2(theta)`` of type ``theta``."""
        return self.e1 * self.effort2(theta)

    @property
    def expected_match(self) -> float:
        return self.e1 ** (1.0 + 1.0 / self.game.k) * self.M

    def to_dict(self, grid: int = 11) -> dict:
        th = np.linspace(0.0, 1.0, grid)
        return {
            "e1": self.e1,
            "M": self.M,
            "iterations": self.iterations,
            "expected_match": self.expected_match,
            "theta": th.tolist(),
            "match": self.match(th).tolist(),
            "mass_at_theta_one": self.game.mass_at_one,
        }


def diamond_equilibrium(g: SearchGame) -> Equilibrium:
    """Greatest equilibrium, reached by iterating best responses down from ``e = 1``."""
    M = match_factor(g.belief, g.exponent)
    e = 1.0
    for it in range(1, MAX_ITER + 1):
        nxt = best_response(g, e, M)
        if abs(nxt - e) < STEP_TOL:
            return Equilibrium(nxt, M, g, it)
        e = nxt
    raise ConvergenceError(f"no fixed point after {MAX_ITER} iterations (last e={e})")


def closed_form_effort(g: SearchGame) -> float:
    """Interior greatest fixed point ``M**(1/(m - 1/k))`` when ``m k > 1``."""
    M = match_factor(g.belief, g.exponent)
    p = g.m - 1.0 / g.k
    if p <= 0:
        return 1.0 if M >= 1.0 else 0.0
    return min(1.0, M ** (1.0 / p))


@dataclass
class BeliefComparison:
    F: Equilibrium
    F_prime: Equilibrium
    certificate: OrderVerdict
    pointwise_ok: bool
    expected_ok: bool

    def to_dict(self) -> dict:
        return {
            "e1_F": self.F.e1,
            "e1_F_prime": self.F_prime.e1,
            "expected_match_F": self.F.expected_match,
            "expected_match_F_prime": self.F_prime.expected_match,
            "certificate": self.certificate.to_dict(),
            "pointwise_F_prime_le_F": self.pointwise_ok,
            "expected_F_prime_le_F": self.expected_ok,
        }


def compare_beliefs(g: SearchGame, F: Distribution, F_prime: Distribution,
                    grid: int = 101, seed: int = 0) -> BeliefComparison:
    """Equilibrium matching under two beliefs.

    When ``F_prime`` dominates ``F`` in the alpha-concave order (types are
    shifted toward costly searchers in the concave sense), matching under
    ``F_prime`` is lower for every type and on average.
    """
    bounds = IntervalBounds(0.0, 1.0)
    cert = check_alpha(F_prime.with_bounds(0.0, 1.0), F.with_bounds(0.0, 1.0), g.alpha, bounds,
                       seed=seed)
    eq = diamond_equilibrium(g.with_belief(F))
    eqp = diamond_equilibrium(g.with_belief(F_prime))
    th = np.linspace(0.0, 1.0, grid)
    pointwise = bool(np.all(eqp.match(th) <= eq.match(th) + 1e-12))
    expected = eqp.expected_match <= eq.expected_match + 1e-12
    return BeliefComparison(eq, eqp, cert, pointwise, expected)
