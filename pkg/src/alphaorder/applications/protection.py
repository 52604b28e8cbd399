"""Self-protection: pay to lower the probability of a loss."""

from __future__ import annotations

from dataclasses import dataclass

from ..distribution import DomainError
from ..orders import OrderVerdict, Outcome, check_two_point, two_point_distributions

RECOMMENDATIONS = {
    Outcome.DOMINATES: "do not increase self-protection",
    Outcome.FAILS_AT: "some 2-concave decision makers prefer more self-protection",
    Outcome.INCONCLUSIVE: "no recommendation: the cheaper option does not have the lower expected value",
}


@dataclass(frozen=True)
class ProtectionProblem:
    """Spend ``e_x`` (loss probability ``p``) or ``e_y`` (loss probability ``q``).

    Lottery X pays ``w-L-e_x`` w.p. ``p`` and ``w-e_x`` otherwise; lottery
    Y pays ``w-L-e_y`` w.p. ``q`` and ``w-e_y`` otherwise.
    """

    w: float
    L: float
    e_x: float
    e_y: float
    p: float
    q: float

    def __post_init__(self):
        if not self.L > 0:
            raise DomainError("loss must be positive")
        if not self.e_x >= self.e_y >= 0:
            raise DomainError("need e_x >= e_y >= 0")
        for name in ("p", "q"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name}={v} is not a probability")
        if self.q < self.p:
            raise DomainError("extra protection must not raise the loss probability (need q >= p)")
        if not self.w - self.e_x > self.w - self.L - self.e_y:
            raise DomainError("protection costs more than the loss; every lottery ordering is trivial")

    def outcomes(self):
        """``(x1, x2, x3, x4)`` in the two-point ordering."""
        w, L = self.w, self.L
        return w - L - self.e_x, w - L - self.e_y, w - self.e_x, w - self.e_y

    def lotteries(self):
        x1, x2, x3, x4 = self.outcomes()
        return two_point_distributions(x1, x2, x3, x4, self.p, self.q)

    def closed_form_margin(self) -> float:
        d = self.e_x - self.e_y
        return self.p * (d + self.L) ** 2 + (1 - self.p) * d * d - self.q * self.L ** 2


def self_protection_verdict(prob: ProtectionProblem) -> tuple[OrderVerdict, str]:
    """Does the low-protection lottery Y dominate X in the 2-concave order?"""
    x1, x2, x3, x4 = prob.outcomes()
    v = check_two_point(x1, x2, x3, x4, prob.p, prob.q)
    v.details["ev_high_protection"] = -prob.p * prob.L - prob.e_x
    v.details["ev_low_protection"] = -prob.q * prob.L - prob.e_y
    return v, RECOMMENDATIONS[v.outcome]
