"""One-parameter verdict sweeps with flip localisation."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .applications.protection import ProtectionProblem, self_protection_verdict
from .distribution import Distribution, DomainError, IntervalBounds
from .oracle import check_alpha
from .orders import OrderVerdict, check_two_point, check_uniform_pair

MAX_ROWS = 1_000_000


def _uniform_pair(p: dict) -> OrderVerdict:
    return check_uniform_pair(p["a1"], p["b1"], p["a2"], p["b2"])


def _two_point(p: dict) -> OrderVerdict:
    return check_two_point(p["x1"], p["x2"], p["x3"], p["x4"], p["p"], p["q"])


def _protect(p: dict) -> OrderVerdict:
    return self_protection_verdict(ProtectionProblem(**{k: p[k] for k in ("w", "L", "e_x", "e_y", "p", "q")}))[0]


def _alpha(p: dict) -> OrderVerdict:
    bounds = IntervalBounds(p["a"], p["b"])
    F = Distribution.from_dict(p["F"]).with_bounds(bounds.a, bounds.b)
    G = Distribution.from_dict(p["G"]).with_bounds(bounds.a, bounds.b)
    return check_alpha(F, G, p["alpha"], bounds, samples=int(p.get("samples", 500)),
                       seed=int(p.get("seed", 0)))


TARGETS = {
    "uniform_pair": _uniform_pair,
    "two_point": _two_point,
    "protect": _protect,
    "alpha": _alpha,
}


def grid_values(grid) -> list[float]:
    """``[v, ...]`` or ``{"start", "stop", "num"}`` (inclusive linspace)."""
    if isinstance(grid, dict):
        num = int(grid["num"])
        if num > MAX_ROWS:
            raise DomainError(f"grid of {num} rows exceeds the {MAX_ROWS} limit")
        if num <= 0:
            return []
        return [float(v) for v in np.linspace(float(grid["start"]), float(grid["stop"]), num)]
    values = [float(v) for v in grid]
    if len(values) > MAX_ROWS:
        raise DomainError(f"grid of {len(values)} rows exceeds the {MAX_ROWS} limit")
    return values


@dataclass
class SweepResult:
    param: str
    rows: list = field(default_factory=list)
    flips: list = field(default_factory=list)

    def to_csv(self) -> str:
        if not self.rows:
            return ""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow([self.param, "outcome", "margin", "condition_id"])
        for r in self.rows:
            w.writerow([repr(r[self.param]), r["outcome"], repr(r["margin"]), r["condition_id"]])
        return buf.getvalue()


def _bisect(fn, fixed, param, lo, hi, out_lo, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fn({**fixed, param: mid}).outcome == out_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def run_sweep(config: dict) -> SweepResult:
    """Evaluate ``target`` over a grid of one parameter.

    ``config``: ``target`` (one of TARGETS), ``fixed`` (other parameters),
    ``param``, ``values`` and optionally ``refine`` (default true) and
    ``refine_tol`` (default 1e-10). Each verdict change between adjacent
    grid points is located by bisection.
    """
    target = config["target"]
    if target not in TARGETS:
        raise DomainError(f"unknown sweep target {target!r}; choose from {sorted(TARGETS)}")
    fn = TARGETS[target]
    fixed = dict(config.get("fixed", {}))
    param = config["param"]
    values = grid_values(config["values"])
    res = SweepResult(param)
    prev = None
    for v in values:
        verdict = fn({**fixed, param: v})
        res.rows.append({param: v, "outcome": verdict.outcome.value, "margin": verdict.margin,
                         "condition_id": verdict.condition_id})
        if prev is not None and prev[1] != verdict.outcome:
            flip = {"between": [prev[0], v], "from": prev[1].value, "to": verdict.outcome.value}
            if config.get("refine", True):
                lo, hi, out_lo = (prev[0], v, prev[1]) if prev[0] < v else (v, prev[0], verdict.outcome)
                flip["at"] = _bisect(fn, fixed, param, lo, hi, out_lo,
                                     float(config.get("refine_tol", 1e-10)))
            res.flips.append(flip)
        prev = (v, verdict.outcome)
    return res
