import time

import numpy as np
from hypothesis import strategies as st

from alphaorder.distribution import Atom, Distribution, Segment


@st.composite
def mixtures(draw, a=0.0, b=1.0, max_atoms=3, max_segments=2):
    """Random atom+uniform mixture on [a, b]."""
    na = draw(st.integers(0, max_atoms))
    ns = draw(st.integers(0 if na else 1, max_segments))
    unit = st.floats(0.0, 1.0, allow_nan=False)
    raw = [draw(st.floats(0.05, 1.0)) for _ in range(na + ns)]
    w = np.array(raw) / sum(raw)
    atoms = tuple(Atom(a + (b - a) * draw(unit), float(p)) for p in w[:na])
    segs = []
    for p in w[na:]:
        u, v = sorted((draw(unit), draw(unit)))
        if v - u < 1e-3:
            u, v = max(0.0, u - 1e-3), min(1.0, v + 1e-3)
        segs.append(Segment(a + (b - a) * u, a + (b - a) * v, float(p)))
    return Distribution(a, b, atoms, tuple(segs))


# -- acceptance summary --------------------------------------------------------

ACCEPTANCE = {}
SUITE_BUDGET_S = 60.0


def record(criterion: int, ok: bool, detail: str) -> bool:
    """Store and print one PASS/FAIL line for an acceptance criterion."""
    ACCEPTANCE[criterion] = (bool(ok), detail)
    print(f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    return bool(ok)


def pytest_sessionstart(session):
    session.config._started = time.perf_counter()


def pytest_collection_finish(session):
    session.config._modules = len({item.path for item in session.items})


def _full_suite(config) -> bool:
    # the runtime budget applies only when every test module ran unfiltered
    return (not config.getoption("keyword") and len(ACCEPTANCE) == 11
            and getattr(config, "_modules", 0) > 1)


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - session.config._started
    session.config._elapsed = elapsed
    if _full_suite(session.config) and elapsed >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        if k == 11 and _full_suite(config):
            fast = config._elapsed < SUITE_BUDGET_S
            ok = ok and fast
            detail += f"; full suite {config._elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
