"""Command line front end.

Exit codes: 0 success, 1 usage or validation error, 2 a documented
verdict changed (``repro``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .commands import RUNNERS
from .distribution import DomainError
from .orders import PreconditionError
from .repro import FIXTURE_IDS, run_fixture

EXIT_OK, EXIT_USAGE, EXIT_CHANGED = 0, 1, 2


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object at top level")
    return data


def _set(sc: dict, args, *names):
    for name in names:
        v = getattr(args, name, None)
        if v is not None:
            sc[name] = v


class _Bundle:
    """Several reports emitted as one JSON object keyed by fixture id."""

    def __init__(self, ids, reports):
        self.items = dict(zip(ids, reports))

    def to_json(self, with_timings=True):
        return json.dumps({k: r.to_dict(with_timings) for k, r in self.items.items()},
                          sort_keys=True, indent=2, allow_nan=False) + "\n"


def _emit(args, report, csv_text):
    text = report.to_json(with_timings=not args.no_timings)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "csv", None) and csv_text is not None:
        Path(args.csv).write_text(csv_text, newline="")


def _scenario(args) -> dict:
    cmd = args.command
    if cmd in ("check", "oracle"):
        sc = {"F": _load(args.F), "G": _load(args.G)}
        _set(sc, args, "a", "b", "alpha", "samples", "seed", "max_knots")
        if cmd == "check":
            _set(sc, args, "n", "tolerance", "grid")
        elif "alpha" not in sc:
            raise InputError("oracle needs --alpha")
        return sc
    sc = _load(args.scenario)
    if cmd in ("savings", "game"):
        _set(sc, args, "curve_points")
    if cmd in ("game",):
        _set(sc, args, "seed")
    return sc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alphaorder", description="Alpha-concave stochastic order checks and solvers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--no-timings", action="store_true", help="omit wall-clock timings")

    for name, helptext in (("check", "run the dominance checker chain on F versus G"),
                           ("oracle", "search sampled generators for a counterexample")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("F", help="distribution JSON file for the candidate dominant side")
        sp.add_argument("G", help="distribution JSON file for the other side")
        sp.add_argument("--a", type=float)
        sp.add_argument("--b", type=float)
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--samples", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--max-knots", dest="max_knots", type=int)
        if name == "check":
            sp.add_argument("--n", type=int)
            sp.add_argument("--tolerance", type=float)
            sp.add_argument("--grid", type=int)
        common(sp)

    for name, helptext in (("savings", "solve the savings problem (and compare incomes)"),
                           ("protect", "self-protection verdict"),
                           ("game", "greatest equilibrium of the search game"),
                           ("hh", "Hermite-Hadamard bounds for a hinge-power function"),
                           ("sweep", "one-parameter verdict sweep")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("scenario", help="scenario JSON file")
        if name in ("savings", "game", "sweep"):
            sp.add_argument("--csv", help="write the curve / sweep rows as CSV here")
        if name in ("savings", "game"):
            sp.add_argument("--curve-points", dest="curve_points", type=int)
        if name == "game":
            sp.add_argument("--seed", type=int)
        common(sp)

    sp = sub.add_parser("repro", help="rerun a built-in fixture and compare against its documented verdicts")
    sp.add_argument("id", choices=FIXTURE_IDS + ("all",))
    common(sp)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "repro":
            ids = FIXTURE_IDS if args.id == "all" else (args.id,)
            reports, code = [], EXIT_OK
            for fid in ids:
                report, failures = run_fixture(fid)
                reports.append(report)
                for f in failures:
                    print(f"{fid}: {f}", file=sys.stderr)
                if failures:
                    code = EXIT_CHANGED
            _emit(args, reports[0] if len(reports) == 1 else _Bundle(ids, reports), None)
            return code
        report, csv_text = RUNNERS[args.command](_scenario(args))
        _emit(args, report, csv_text)
        return EXIT_OK
    except (InputError, DomainError, PreconditionError) as exc:
        print(f"alphaorder {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"alphaorder {args.command}: missing field {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TypeError, ValueError) as exc:
        print(f"alphaorder {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
