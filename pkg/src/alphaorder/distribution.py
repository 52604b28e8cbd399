"""Atom + uniform-segment mixtures on a compact interval.

Every integral the order checks consume (CDF, its first and second
antiderivatives, lower partial moments, products of hinges) has a closed
form on this family, so no quadrature error can leak into a verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MASS_TOL = 1e-12


class DomainError(ValueError):
    """Raised when an argument lies outside the distribution's interval."""


@dataclass(frozen=True)
class IntervalBounds:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("interval endpoints must be finite")
        if not self.b > self.a:
            raise DomainError(f"need a < b, got [{self.a}, {self.b}]")

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.a - slack <= x <= self.b + slack

    def shift(self, c: float) -> "IntervalBounds":
        return IntervalBounds(self.a + c, self.b + c)


@dataclass(frozen=True)
class Atom:
    x: float
    p: float


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    p: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class Distribution:
    """Finite mixture of point masses and uniform pieces on ``[a, b]``.

    Construction validates total mass (to 1e-12) and support containment;
    nothing is renormalised. Instances are immutable.
    """

    a: float
    b: float
    atoms: tuple = field(default=())
    segments: tuple = field(default=())

    def __post_init__(self):
        IntervalBounds(self.a, self.b)
        atoms = tuple(a if isinstance(a, Atom) else Atom(*map(float, a)) for a in self.atoms)
        segs = tuple(s if isinstance(s, Segment) else Segment(*map(float, s)) for s in self.segments)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "segments", segs)
        total = 0.0
        for at in atoms:
            if at.p < 0 or not math.isfinite(at.p):
                raise DomainError(f"negative or non-finite atom mass {at.p}")
            if not self.a <= at.x <= self.b:
                raise DomainError(f"atom at {at.x} outside [{self.a}, {self.b}]")
            total += at.p
        for s in segs:
            if s.p < 0 or not math.isfinite(s.p):
                raise DomainError(f"negative or non-finite segment mass {s.p}")
            if not s.hi > s.lo:
                raise DomainError(f"degenerate segment [{s.lo}, {s.hi}]")
            if not (self.a <= s.lo and s.hi <= self.b):
                raise DomainError(f"segment [{s.lo}, {s.hi}] outside [{self.a}, {self.b}]")
            total += s.p
        if abs(total - 1.0) > MASS_TOL:
            raise DomainError(f"total mass {total!r} differs from 1 by more than {MASS_TOL}")

    # -- constructors -------------------------------------------------

    @classmethod
    def point(cls, x: float, a: float, b: float) -> "Distribution":
        return cls(a, b, atoms=((x, 1.0),))

    @classmethod
    def uniform(cls, lo: float, hi: float, a: float | None = None, b: float | None = None) -> "Distribution":
        return cls(lo if a is None else a, hi if b is None else b, segments=((lo, hi, 1.0),))

    @classmethod
    def discrete(cls, xs: Sequence[float], ps: Sequence[float], a: float | None = None,
                 b: float | None = None) -> "Distribution":
        xs = [float(x) for x in xs]
        return cls(min(xs) if a is None else a, max(xs) if b is None else b,
                   atoms=tuple(zip(xs, (float(p) for p in ps))))

    @classmethod
    def from_dict(cls, d: dict) -> "Distribution":
        """Parse the ``{"a", "b", "atoms": [{"x","p"}], "segments": [{"lo","hi","p"}]}`` schema."""
        try:
            atoms = tuple(Atom(float(at["x"]), float(at["p"])) for at in d.get("atoms", []))
            segs = tuple(Segment(float(s["lo"]), float(s["hi"]), float(s["p"]))
                         for s in d.get("segments", []))
            return cls(float(d["a"]), float(d["b"]), atoms, segs)
        except KeyError as exc:
            raise DomainError(f"distribution is missing field {exc.args[0]!r}") from None

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "atoms": [{"x": at.x, "p": at.p} for at in self.atoms],
            "segments": [{"lo": s.lo, "hi": s.hi, "p": s.p} for s in self.segments],
        }

    # -- transforms ---------------------------------------------------

    @property
    def bounds(self) -> IntervalBounds:
        return IntervalBounds(self.a, self.b)

    def with_bounds(self, a: float, b: float) -> "Distribution":
        return Distribution(a, b, self.atoms, self.segments)

    def shift(self, c: float) -> "Distribution":
        return Distribution(self.a + c, self.b + c,
                            tuple(Atom(at.x + c, at.p) for at in self.atoms),
                            tuple(Segment(s.lo + c, s.hi + c, s.p) for s in self.segments))

    def affine(self, scale: float, offset: float = 0.0) -> "Distribution":
        """Push forward through ``x -> scale*x + offset`` (scale > 0)."""
        if not scale > 0:
            raise DomainError("scale must be positive")
        f = lambda x: scale * x + offset  # noqa: E731
        return Distribution(f(self.a), f(self.b),
                            tuple(Atom(f(at.x), at.p) for at in self.atoms),
                            tuple(Segment(f(s.lo), f(s.hi), s.p) for s in self.segments))

    def support_range(self) -> tuple[float, float]:
        pts = [at.x for at in self.atoms if at.p > 0]
        pts += [v for s in self.segments if s.p > 0 for v in (s.lo, s.hi)]
        return min(pts), max(pts)

    def breakpoints(self) -> np.ndarray:
        """Points where the CDF or any of its antiderivatives change formula."""
        pts = [self.a, self.b]
        pts += [at.x for at in self.atoms]
        pts += [v for s in self.segments for v in (s.lo, s.hi)]
        return np.unique(np.asarray(pts, dtype=float))

    # -- pointwise quantities ----------------------------------------

    def _check(self, x: float, name: str = "x") -> float:
        x = float(x)
        if not self.a <= x <= self.b:
            raise DomainError(f"{name}={x} outside [{self.a}, {self.b}]")
        return x

    def cdf(self, x: float) -> float:
        """Right-continuous CDF value at ``x``."""
        return cdf(self, x)

    def cdf_left(self, x: float) -> float:
        """Left limit ``F(x-)``."""
        x = self._check(x)
        tot = sum(at.p for at in self.atoms if at.x < x)
        for s in self.segments:
            tot += s.p * min(max((x - s.lo) / s.width, 0.0), 1.0)
        return tot


def mixture(components: Iterable[tuple[float, Distribution]]) -> Distribution:
    """Convex combination of distributions sharing one interval."""
    components = list(components)
    a = components[0][1].a
    b = components[0][1].b
    atoms, segs = [], []
    for w, d in components:
        if (d.a, d.b) != (a, b):
            raise DomainError("mixture components must share the same interval")
        atoms += [Atom(at.x, w * at.p) for at in d.atoms]
        segs += [Segment(s.lo, s.hi, w * s.p) for s in d.segments]
    return Distribution(a, b, tuple(atoms), tuple(segs))


def cdf(F: Distribution, x: float) -> float:
    x = F._check(x)
    tot = sum(at.p for at in F.atoms if at.x <= x)
    for s in F.segments:
        tot += s.p * min(max((x - s.lo) / s.width, 0.0), 1.0)
    return tot


def cdf_integral(F: Distribution, c: float) -> float:
    """``int_a^c F(x) dx`` from the per-component antiderivative of the CDF."""
    c = F._check(c, "c")
    tot = 0.0
    for at in F.atoms:
        if c > at.x:
            tot += at.p * (c - at.x)
    for s in F.segments:
        if c <= s.lo:
            continue
        if c < s.hi:
            tot += s.p * (c - s.lo) ** 2 / (2.0 * s.width)
        else:
            tot += s.p * (c - 0.5 * (s.lo + s.hi))
    return tot


def cdf_double_integral(F: Distribution, c: float) -> float:
    """``int_a^c int_a^x F(z) dz dx``, piecewise cubic in ``c``."""
    c = F._check(c, "c")
    tot = 0.0
    for at in F.atoms:
        if c > at.x:
            tot += 0.5 * at.p * (c - at.x) ** 2
    for s in F.segments:
        if c <= s.lo:
            continue
        if c < s.hi:
            tot += s.p * (c - s.lo) ** 3 / (6.0 * s.width)
        else:
            tot += s.p * (s.width ** 2 / 6.0 + 0.5 * (c - s.lo) * (c - s.hi))
    return tot


def partial_moment(F: Distribution, c: float, k: int) -> float:
    """Lower partial moment ``E[max(c - X, 0)^k]``; ``k = 0`` returns 1 by convention."""
    c = F._check(c, "c")
    if k < 0 or int(k) != k:
        raise DomainError(f"k must be a nonnegative integer, got {k}")
    k = int(k)
    if k == 0:
        return 1.0
    tot = 0.0
    for at in F.atoms:
        if c > at.x:
            tot += at.p * (c - at.x) ** k
    for s in F.segments:
        if c <= s.lo:
            continue
        top = c - s.lo
        bot = max(c - s.hi, 0.0)
        tot += s.p * (top ** (k + 1) - bot ** (k + 1)) / ((k + 1) * s.width)
    return tot


def _elementary_symmetric(d: np.ndarray) -> np.ndarray:
    """Rows of ``e_0..e_n`` of the entries of each row of ``d`` (shape (m, n))."""
    m, n = d.shape
    e = np.zeros((m, n + 1))
    e[:, 0] = 1.0
    for j in range(n):
        e[:, 1:j + 2] = e[:, 1:j + 2] + d[:, j:j + 1] * e[:, 0:j + 1]
    return e


def product_hinge_moments(F: Distribution, cs: np.ndarray) -> np.ndarray:
    """Vectorised ``E[prod_i max(c_i - X, 0)]`` for each row of ``cs``.

    On a segment the integrand below ``m = min c_i`` is ``prod (d_i + u)``
    with ``u = m - x`` and ``d_i = c_i - m >= 0``; its antiderivative in
    ``u`` has nonnegative coefficients, which keeps the evaluation stable.
    """
    cs = np.atleast_2d(np.asarray(cs, dtype=float))
    if np.any(cs < F.a) or np.any(cs > F.b):
        raise DomainError(f"hinge locations must lie in [{F.a}, {F.b}]")
    m = cs.min(axis=1)
    out = np.zeros(cs.shape[0])
    for at in F.atoms:
        out += at.p * np.prod(np.maximum(cs - at.x, 0.0), axis=1)
    if F.segments:
        n = cs.shape[1]
        e = _elementary_symmetric(cs - m[:, None])
        # coefficient of u^j in prod(d_i + u) is e_{n-j}
        coef = e[:, ::-1] / np.arange(1, n + 2)[None, :]

        def antider(u):
            acc = np.zeros_like(u)
            for j in range(n, -1, -1):
                acc = acc * u + coef[:, j]
            return acc * u

        for s in F.segments:
            u_hi = np.maximum(m - s.lo, 0.0)
            u_lo = np.maximum(m - s.hi, 0.0)
            out += s.p * (antider(u_hi) - antider(u_lo)) / s.width
    return out


def product_hinge_moment(F: Distribution, c: Sequence[float]) -> float:
    """``E[prod_i max(c_i - X, 0)]`` for one hinge vector."""
    c = np.asarray(c, dtype=float).reshape(1, -1)
    return float(product_hinge_moments(F, c)[0])


def expectation(F: Distribution) -> float:
    return (sum(at.p * at.x for at in F.atoms)
            + sum(s.p * 0.5 * (s.lo + s.hi) for s in F.segments))


def second_moment(F: Distribution) -> float:
    return (sum(at.p * at.x ** 2 for at in F.atoms)
            + sum(s.p * (s.lo ** 2 + s.lo * s.hi + s.hi ** 2) / 3.0 for s in F.segments))


def variance(F: Distribution) -> float:
    mu = expectation(F)
    return second_moment(F) - mu * mu
