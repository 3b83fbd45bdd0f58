import functools
import random

import pytest

from gradcontract import contraction as C
from gradcontract.identify import run_catalog

ACCEPTANCE: dict = {}


@functools.lru_cache(maxsize=None)
def catalog():
    return tuple(C.load_catalog())


@functools.lru_cache(maxsize=None)
def catalog_report():
    # Casimirs are checked row by row elsewhere, so the report skips them
    return run_catalog(seed=0, budget=20000, max_degree=None)


@pytest.fixture(scope="session")
def entries():
    return catalog()


@pytest.fixture(scope="session")
def report():
    return catalog_report()


@pytest.fixture
def rng():
    return random.Random(20260)


@pytest.fixture
def criterion(request):
    """Record PASS/FAIL for an acceptance criterion under its number."""

    def record(number: int):
        ACCEPTANCE.setdefault(number, []).append(request.node)
        return number

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.acceptance_passed = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        nodes = ACCEPTANCE[number]
        failed = [n.name for n in nodes if not getattr(n, "acceptance_passed", False)]
        status = "FAIL" if failed else "PASS"
        detail = f"{len(nodes) - len(failed)}/{len(nodes)} checks"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {number}: {status} ({detail})")
