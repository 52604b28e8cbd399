"""Built-in reproduction fixtures with documented verdicts."""

from __future__ import annotations

import json
from importlib import resources

from .commands import RUNNERS
from .distribution import DomainError
from .reports import Report, digest


def load_fixtures() -> dict:
    return json.loads(resources.files("alphaorder").joinpath("data/fixtures.json").read_text())


FIXTURE_IDS = ("example1", "example2", "example3", "figure1", "figure2", "lemma1-grid",
               "hh-extremal", "game-derived", "protect-derived")


def lookup(d: dict, path: str):
    """Dotted-path lookup; integer parts index lists and ``length`` gives a list's size."""
    cur = d
    for part in path.split("."):
        if isinstance(cur, list):
            cur = len(cur) if part == "length" else cur[int(part)]
        else:
            cur = cur[part]
    return cur


def matches(actual, expected) -> bool:
    if isinstance(expected, dict) and "approx" in expected:
        return isinstance(actual, (int, float)) and abs(actual - expected["approx"]) <= expected["tol"]
    return actual == expected


def run_fixture(fid: str) -> tuple[Report, list]:
    """Run every case of ``fid``; returns a summary report and the list of mismatches."""
    fixtures = load_fixtures()
    if fid not in fixtures:
        raise DomainError(f"unknown fixture {fid!r}; choose from {', '.join(sorted(fixtures))}")
    fx = fixtures[fid]
    rep = Report("repro", {"id": fid, "fixture": fx})
    failures = []
    for i, case in enumerate(fx["cases"]):
        sub, _ = RUNNERS[case["command"]](case["scenario"])
        d = sub.to_dict(with_timings=False)
        checks = {}
        for path, want in sorted(case["expect"].items()):
            try:
                got = lookup(d, path)
            except (KeyError, IndexError, ValueError):
                got = None
            ok = matches(got, want)
            checks[path] = {"expected": want, "actual": got, "ok": ok}
            if not ok:
                failures.append(f"case {i}: {path} expected {want!r}, got {got!r}")
        rep.solver_outputs[f"case{i}"] = {"command": case["command"], "checks": checks,
                                          "report_digest": digest(d)}
        for name, v in d["verdicts"].items():
            rep.verdicts[f"case{i}.{name}"] = v
        for k, ms in sub.timings.items():
            rep.timings[f"case{i}.{k}"] = ms
    if fx.get("figure_sourced"):
        rep.solver_outputs["figure_sourced"] = True
        rep.solver_outputs["note"] = fx.get("note", "")
    rep.solver_outputs["all_documented_verdicts_hold"] = not failures
    return rep, failures
