from itertools import combinations_with_replacement
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def enum_hfold(A, h, add, identity):
    """Independent oracle: all sums of h not necessarily distinct elements of A."""
    out = set()
    for combo in combinations_with_replacement(sorted(A), h):
        s = identity
        for a in combo:
            s = add(s, a)
        out.add(s)
    return out


def enum_sumset(B, As, hs, add, identity):
    parts = [enum_hfold(A, h, add, identity) for A, h in zip(As, hs)]
    out = set(B)
    for part in parts:
        out = {add(x, u) for x in out for u in part}
    return out


def int_add(x, y):
    return x + y


@pytest.fixture
def fixtures_dir():
    return FIXTURES


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE[n] = (title, rep.outcome, getattr(rep, "duration", 0.0))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, outcome, dur = _ACCEPTANCE[n]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {title}  ({dur:.1f}s)")
