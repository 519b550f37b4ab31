import random

import pytest
from hypothesis import strategies as st

from plumbcalc.plumbing import PlumbingConfig

_acceptance_results = []


def random_config(rng: random.Random, kmax=3, mmax=6, bmax=9, amax=9, k=None, m=None) -> PlumbingConfig:
    k = k if k is not None else rng.randint(1, kmax)
    chains = []
    for _ in range(k):
        mi = m if m is not None else rng.randint(1, mmax)
        chains.append(([rng.randint(2, bmax) for _ in range(mi)], [rng.randint(1, amax) for _ in range(mi)]))
    return PlumbingConfig.from_lists(*chains)


@st.composite
def configs(draw, kmax=3, mmax=6, bmax=9, amax=9):
    k = draw(st.integers(1, kmax))
    chains = []
    for _ in range(k):
        m = draw(st.integers(1, mmax))
        b = draw(st.lists(st.integers(2, bmax), min_size=m, max_size=m))
        a = draw(st.lists(st.integers(1, amax), min_size=m, max_size=m))
        chains.append((b, a))
    return PlumbingConfig.from_lists(*chains)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion from the build contract")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = marker.args
        _acceptance_results.append((number, title, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    merged: dict = {}
    for number, title, outcome, duration in _acceptance_results:
        ok, total = merged.get(number, (True, 0.0))[0], merged.get(number, (True, 0.0))[1]
        merged[number] = (ok and outcome == "passed", total + duration, title)
    for number in sorted(merged):
        ok, duration, title = merged[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({duration:.2f} s)")
