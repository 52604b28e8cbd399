"""Test functions: hinge-power members of the alpha-concave generator set and smooth utilities."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .distribution import Distribution, DomainError, IntervalBounds
from .quadrature import adaptive_gauss_legendre

CONCAVE_INCREASING = "concave-increasing"
CONVEX_DECREASING = "convex-decreasing"

# below this relative change of the inner hinge sum across a piece the
# closed-form antiderivative loses digits to cancellation
_CLOSED_FORM_MIN_REL_CHANGE = 1e-3


@dataclass(frozen=True)
class HingePowerFunction:
    """``u(x) = K - (sum_j gamma_j max(c_j - x, 0))**alpha`` on ``[a, b]``.

    With ``orientation="convex-decreasing"`` the function is ``-u``. The
    alpha-th root of ``u(b) - u(x)`` is a nonnegative combination of
    hinges, hence convex, so every instance belongs to the generator set
    by construction.
    """

    alpha: float
    bounds: IntervalBounds
    knots: tuple = ()
    offset: float = 0.0
    orientation: str = CONCAVE_INCREASING

    def __post_init__(self):
        if not self.alpha >= 1:
            raise DomainError(f"alpha must be >= 1, got {self.alpha}")
        if self.orientation not in (CONCAVE_INCREASING, CONVEX_DECREASING):
            raise DomainError(f"unknown orientation {self.orientation!r}")
        knots = tuple((float(c), float(g)) for c, g in self.knots)
        for c, g in knots:
            if g < 0:
                raise DomainError(f"negative hinge weight {g}")
            if not self.bounds.contains(c):
                raise DomainError(f"knot {c} outside [{self.bounds.a}, {self.bounds.b}]")
        object.__setattr__(self, "knots", tuple(sorted(knots)))
        object.__setattr__(self, "_c", np.array([c for c, _ in self.knots]))
        object.__setattr__(self, "_g", np.array([g for _, g in self.knots]))

    @property
    def sign(self) -> float:
        return 1.0 if self.orientation == CONCAVE_INCREASING else -1.0

    def inner(self, x):
        """The hinge sum ``sum_j gamma_j max(c_j - x, 0)``."""
        x = np.asarray(x, dtype=float)
        if not self.knots:
            return np.zeros_like(x)
        return np.maximum(self._c - x[..., None], 0.0) @ self._g

    def gap(self, x):
        """``|u(b) - u(x)|``, the alpha-convex part."""
        return self.inner(x) ** self.alpha

    def __call__(self, x):
        return self.sign * (self.offset - self.gap(x))

    def negated(self) -> "HingePowerFunction":
        flip = CONVEX_DECREASING if self.orientation == CONCAVE_INCREASING else CONCAVE_INCREASING
        return HingePowerFunction(self.alpha, self.bounds, self.knots, self.offset, flip)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "a": self.bounds.a,
            "b": self.bounds.b,
            "knots": [c for c, _ in self.knots],
            "weights": [g for _, g in self.knots],
            "offset": self.offset,
            "orientation": self.orientation,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HingePowerFunction":
        return cls(float(d["alpha"]), IntervalBounds(float(d["a"]), float(d["b"])),
                   tuple(zip(d["knots"], d["weights"])), float(d.get("offset", 0.0)),
                   d.get("orientation", CONCAVE_INCREASING))


def sample(alpha: float, bounds: IntervalBounds, m: int, rng_seed=None, *,
           orientation: str = CONCAVE_INCREASING) -> HingePowerFunction:
    """Random hinge-power function with ``m`` knots.

    Knots are uniform on ``[a, b]``; weights are log-uniform on
    ``[1e-2, 1e2]``. ``rng_seed`` may be an int, a SeedSequence or a Generator.
    """
    if m < 1:
        raise DomainError("need at least one knot")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    cs = rng.uniform(bounds.a, bounds.b, size=m)
    gs = 10.0 ** rng.uniform(-2.0, 2.0, size=m)
    return HingePowerFunction(alpha, bounds, tuple(zip(cs, gs)), 0.0, orientation)


def _power_integral(fn: HingePowerFunction, lo: float, hi: float) -> float:
    """``int_lo^hi inner(x)**alpha dx``; inner is linear between knots."""
    alpha = fn.alpha
    cuts = np.array([lo] + [c for c, _ in fn.knots if lo < c < hi] + [hi])
    vals = fn.inner(cuts)
    total = 0.0
    for p, q, sp, sq in zip(cuts[:-1], cuts[1:], vals[:-1], vals[1:]):
        big = max(sp, sq)
        if big == 0.0:
            continue
        if abs(sp - sq) > _CLOSED_FORM_MIN_REL_CHANGE * big:
            total += (q - p) * (sp ** (alpha + 1) - sq ** (alpha + 1)) / ((alpha + 1) * (sp - sq))
        else:
            total += adaptive_gauss_legendre(lambda x: fn.inner(x) ** alpha, p, q,
                                             tol=1e-11 * big ** alpha * (q - p) + 1e-300)
    return total


def gap_expectation(fn: HingePowerFunction, F: Distribution) -> float:
    """``E_F[inner(X)**alpha]``: exact on atoms, per-knot-interval on segments."""
    if not (fn.bounds.a <= F.support_range()[0] and F.support_range()[1] <= fn.bounds.b):
        raise DomainError("distribution support leaves the function's interval")
    tot = 0.0
    if F.atoms:
        xs = np.array([at.x for at in F.atoms])
        ps = np.array([at.p for at in F.atoms])
        tot += float(ps @ fn.gap(xs))
    for s in F.segments:
        tot += s.p * _power_integral(fn, s.lo, s.hi) / s.width
    return tot


def integrate(fn: HingePowerFunction, F: Distribution) -> float:
    """``E_F[u(X)]``."""
    return fn.sign * (fn.offset - gap_expectation(fn, F))


# -- smooth utilities -------------------------------------------------------

def _crra_quadratic(x, d, gamma, b):
    c = gamma / b ** (gamma + 1)
    if d == 0:
        base = np.log(x) if gamma == 1 else x ** (1 - gamma) / (1 - gamma)
        return base + 0.5 * c * x * x
    if d == 1:
        return x ** (-gamma) + c * x
    if d == 2:
        return -gamma * x ** (-gamma - 1) + c
    return gamma * (gamma + 1) * x ** (-gamma - 2)


def _crra(x, d, gamma):
    if d == 0:
        return np.log(x) if gamma == 1 else x ** (1 - gamma) / (1 - gamma)
    if d == 1:
        return x ** (-gamma)
    if d == 2:
        return -gamma * x ** (-gamma - 1)
    return gamma * (gamma + 1) * x ** (-gamma - 2)


def _exponential(x, d, theta):
    e = np.exp(-theta * x)
    return (-e / theta, e, -theta * e, theta * theta * e)[d]


def _power(x, d, k, b):
    # u(x) = -(b - x)**k / k
    y = b - x
    if d == 0:
        return -y ** k / k
    if d == 1:
        return y ** (k - 1)
    if d == 2:
        return -(k - 1) * y ** (k - 2)
    return (k - 1) * (k - 2) * y ** (k - 3)


def _polynomial(x, d, coeffs):
    return np.polynomial.Polynomial(coeffs).deriv(d)(x) if d else np.polynomial.Polynomial(coeffs)(x)


_FAMILIES = {
    "crra_quadratic": (_crra_quadratic, ("gamma", "b")),
    "crra": (_crra, ("gamma",)),
    "exponential": (_exponential, ("theta",)),
    "power": (_power, ("k", "b")),
    "polynomial": (_polynomial, ("coeffs",)),
}


@dataclass(frozen=True)
class SmoothUtility:
    """Closed-form utility with derivatives up to order three.

    Families and parameters:

    ``crra_quadratic`` (gamma, b)
        ``x**(1-gamma)/(1-gamma) + gamma x**2 / (2 b**(gamma+1))``; log form at gamma = 1.
    ``crra`` (gamma)
        constant relative risk aversion.
    ``exponential`` (theta)
        ``-exp(-theta x)/theta``.
    ``power`` (k, b)
        ``-(b - x)**k / k``.
    ``polynomial`` (coeffs)
        coefficients in increasing degree.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown utility family {self.family!r}")
        missing = [k for k in _FAMILIES[self.family][1] if k not in self.params]
        if missing:
            raise DomainError(f"{self.family} utility is missing parameters {missing}")

    def derivative(self, x, d: int = 0):
        fn, names = _FAMILIES[self.family]
        x = np.asarray(x, dtype=float)
        return fn(x, d, *(self.params[k] for k in names))

    def __call__(self, x):
        return self.derivative(x, 0)

    def d1(self, x):
        return self.derivative(x, 1)

    def d2(self, x):
        return self.derivative(x, 2)

    def d3(self, x):
        return self.derivative(x, 3)

    def to_dict(self) -> dict:
        return {"family": self.family, **{k: (list(v) if isinstance(v, (list, tuple)) else v)
                                          for k, v in self.params.items()}}

    @classmethod
    def from_dict(cls, d: dict) -> "SmoothUtility":
        d = dict(d)
        family = d.pop("family")
        return cls(family, d)


def crra_quadratic(gamma: float, b: float) -> SmoothUtility:
    return SmoothUtility("crra_quadratic", {"gamma": float(gamma), "b": float(b)})


def crra(gamma: float) -> SmoothUtility:
    return SmoothUtility("crra", {"gamma": float(gamma)})


def polynomial(coeffs: Sequence[float]) -> SmoothUtility:
    return SmoothUtility("polynomial", {"coeffs": tuple(float(c) for c in coeffs)})


def midpoint_convexity_violation(fn, lo: float, hi: float, pairs: int = 1000, seed=0) -> float:
    """Largest ``fn((x+y)/2) - (fn(x)+fn(y))/2`` over random pairs (<= 0 for convex ``fn``)."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(lo, hi, pairs)
    y = rng.uniform(lo, hi, pairs)
    viol = fn(0.5 * (x + y)) - 0.5 * (fn(x) + fn(y))
    return float(np.max(viol))


def root_gap(fn: HingePowerFunction):
    """The alpha-th root of ``|u(b) - u(x)|`` as a callable."""
    return lambda x: fn.gap(x) ** (1.0 / fn.alpha)


def smooth_root_gap(u: SmoothUtility, alpha: float, b: float):
    """``(u(b) - u(x))**(1/alpha)`` for a smooth increasing utility."""
    ub = float(u(b))
    return lambda x: np.maximum(ub - u(x), 0.0) ** (1.0 / alpha)
