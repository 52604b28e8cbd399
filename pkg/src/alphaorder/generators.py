"""Random instances for property sweeps: mixtures and pairs with known dominance."""

from __future__ import annotations

import numpy as np

from .distribution import Atom, Distribution, IntervalBounds, Segment
from .orders import check_two_sufficient


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_mixture(seed, bounds: IntervalBounds, max_atoms: int = 3, max_segments: int = 2) -> Distribution:
    """Random atom+uniform mixture on ``bounds`` with at least one component."""
    rng = _rng(seed)
    a, b = bounds.a, bounds.b
    while True:
        na = int(rng.integers(0, max_atoms + 1))
        ns = int(rng.integers(0, max_segments + 1))
        if na + ns:
            break
    w = rng.dirichlet(np.ones(na + ns))
    atoms = [Atom(float(x), float(p)) for x, p in zip(rng.uniform(a, b, na), w[:na])]
    segs = []
    for p in w[na:]:
        lo, hi = np.sort(rng.uniform(a, b, 2))
        if hi - lo < 1e-3 * (b - a):
            hi = min(b, lo + 1e-3 * (b - a))
            lo = hi - 1e-3 * (b - a)
        segs.append(Segment(float(lo), float(hi), float(p)))
    return Distribution(a, b, tuple(atoms), tuple(segs))


def coarsen(G: Distribution, cuts) -> Distribution:
    """Replace ``G`` by its conditional means on the cells cut out by ``cuts``.

    By Jensen's inequality the result dominates ``G`` in second order.
    """
    edges = np.concatenate(([G.a], np.sort(np.asarray(cuts, dtype=float)), [G.b]))
    mass = np.zeros(len(edges) - 1)
    first = np.zeros(len(edges) - 1)

    def cell(x):
        return min(int(np.searchsorted(edges, x, side="right")) - 1, len(mass) - 1)

    for at in G.atoms:
        i = cell(at.x)
        mass[i] += at.p
        first[i] += at.p * at.x
    for s in G.segments:
        pts = np.concatenate(([s.lo], edges[(edges > s.lo) & (edges < s.hi)], [s.hi]))
        for lo, hi in zip(pts[:-1], pts[1:]):
            p = s.p * (hi - lo) / s.width
            i = cell(0.5 * (lo + hi))
            mass[i] += p
            first[i] += p * 0.5 * (lo + hi)
    keep = mass > 0
    xs = np.clip(first[keep] / mass[keep], G.a, G.b)
    return Distribution(G.a, G.b, tuple(Atom(float(x), float(p)) for x, p in zip(xs, mass[keep])))


def sosd_pair(seed, bounds: IntervalBounds, cells: int = 3):
    """``(F, G)`` with ``F`` second-order dominating ``G`` (``F`` a coarsening of ``G``)."""
    rng = _rng(seed)
    G = random_mixture(rng, bounds)
    cuts = rng.uniform(bounds.a, bounds.b, cells - 1)
    return coarsen(G, cuts), G


def _component(rng, lo: float, b: float):
    """A dominating pair on ``[lo, b]`` that second-order dominance does not see."""
    kind = int(rng.integers(0, 2))
    if kind == 0:
        # point at lo + lam (b - lo) against {lo: lam^2, b: 1 - lam^2}
        lam = float(rng.uniform(0.05, 0.95))
        F = ((Atom(lo + lam * (b - lo), 1.0),), ())
        G = ((Atom(lo, lam * lam), Atom(b, 1.0 - lam * lam)), ())
    else:
        # uniform on [lo, b] against {lo: 1/3, b: 2/3}
        F = ((), (Segment(lo, b, 1.0),))
        G = ((Atom(lo, 1.0 / 3.0), Atom(b, 2.0 / 3.0)), ())
    return F, G


def two_sufficient_pair(seed, bounds: IntervalBounds, components: int = 3, max_tries: int = 50):
    """``(F, G)`` with ``F`` 2-sufficiently dominating ``G`` on ``bounds``.

    Built as a common-weight mixture of tight extremal pairs anchored at
    ``b`` and a second-order pair, then confirmed by the exact check.
    """
    rng = _rng(seed)
    a, b = bounds.a, bounds.b
    for _ in range(max_tries):
        n = int(rng.integers(1, components + 1))
        w = rng.dirichlet(np.ones(n + 1))
        fa, fs, ga, gs = [], [], [], []
        for i in range(n):
            lo = float(rng.uniform(a, a + 0.9 * (b - a)))
            (pa, ps), (qa, qs) = _component(rng, lo, b)
            fa += [Atom(t.x, t.p * w[i]) for t in pa]
            fs += [Segment(t.lo, t.hi, t.p * w[i]) for t in ps]
            ga += [Atom(t.x, t.p * w[i]) for t in qa]
            gs += [Segment(t.lo, t.hi, t.p * w[i]) for t in qs]
        Fs, Gs = sosd_pair(rng, bounds)
        fa += [Atom(t.x, t.p * w[n]) for t in Fs.atoms]
        ga += [Atom(t.x, t.p * w[n]) for t in Gs.atoms]
        gs += [Segment(t.lo, t.hi, t.p * w[n]) for t in Gs.segments]
        F = Distribution(a, b, tuple(fa), tuple(fs))
        G = Distribution(a, b, tuple(ga), tuple(gs))
        if check_two_sufficient(F, G, bounds).dominates:
            return F, G
    raise RuntimeError("could not generate a dominating pair")


def uniform_pair_tuple(seed):
    """Random ``(a1, b1, a2, b2)`` with ``a1 < a2 < b2 < b1`` and the wide uniform having the larger mean."""
    rng = _rng(seed)
    while True:
        a1 = float(rng.uniform(-1.0, 1.0))
        a2, b2 = np.sort(rng.uniform(a1, a1 + 1.0, 2))
        b1 = float(rng.uniform(b2, a1 + 2.0))
        if a1 < a2 < b2 < b1 and (a1 + b1) > (a2 + b2) + 1e-6:
            return a1, b1, float(a2), float(b2)


def two_point_tuple(seed):
    """Random ``(x1, x2, x3, x4, p, q)`` admissible for the two-point comparison."""
    rng = _rng(seed)
    while True:
        x1, x2, x3, x4 = np.sort(rng.uniform(0.0, 1.0, 4))
        if rng.random() < 0.5:
            x2, x3 = x3, x2
        p, q = rng.uniform(0.0, 1.0, 2)
        if x4 - x1 < 1e-3:
            continue
        if p * x1 + (1 - p) * x3 >= q * x2 + (1 - q) * x4:
            return float(x1), float(x2), float(x3), float(x4), float(p), float(q)
