"""Adaptive Gauss-Legendre quadrature with an explicit error target."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


class QuadratureError(RuntimeError):
    """Raised when the error target cannot be met within the subdivision budget."""


@lru_cache(maxsize=None)
def _rule(n: int):
    return np.polynomial.legendre.leggauss(n)


def gauss_legendre(f, lo: float, hi: float, n: int = 20) -> float:
    """Fixed ``n``-point rule on ``[lo, hi]``; ``f`` must accept arrays."""
    x, w = _rule(n)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return float(half * np.dot(w, f(mid + half * x)))


def adaptive_gauss_legendre(f, lo: float, hi: float, tol: float = 1e-11, n: int = 20,
                            max_depth: int = 40, max_intervals: int = 20000) -> float:
    """Integrate ``f`` over ``[lo, hi]`` to absolute error ``tol``.

    Each panel is estimated with an ``n``-point and a ``2n``-point rule; a
    panel whose estimates disagree by more than its share of ``tol`` is
    bisected.
    """
    if hi == lo:
        return 0.0
    if hi < lo:
        return -adaptive_gauss_legendre(f, hi, lo, tol, n, max_depth, max_intervals)
    total = 0.0
    stack = [(lo, hi, 0)]
    width = hi - lo
    visited = 0
    worst = 0.0
    while stack:
        a, b, depth = stack.pop()
        visited += 1
        coarse = gauss_legendre(f, a, b, n)
        fine = gauss_legendre(f, a, b, 2 * n)
        err = abs(fine - coarse)
        share = tol * (b - a) / width
        if err <= max(share, 1e-15 * abs(fine)) or depth >= max_depth:
            if err > share:
                worst = max(worst, err)
            total += fine
            continue
        if visited > max_intervals:
            raise QuadratureError(
                f"no convergence on [{lo}, {hi}]: panel [{a}, {b}] error {err:.3e} > {share:.3e}")
        m = 0.5 * (a + b)
        stack.append((m, b, depth + 1))
        stack.append((a, m, depth + 1))
    if worst > tol:
        raise QuadratureError(f"error target {tol:.1e} missed on [{lo}, {hi}] (panel error {worst:.3e})")
    return total
