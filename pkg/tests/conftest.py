from __future__ import annotations

import functools
from pathlib import Path

import pytest

from isoweave.construct import enumerate_designs
from isoweave.io import load_design

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@functools.lru_cache(maxsize=None)
def enumeration(order: int, include_falling_apart: bool = False):
    """Enumerations are slow at order 20, so every test shares one copy."""
    return enumerate_designs(order, include_falling_apart=include_falling_apart)


@functools.lru_cache(maxsize=None)
def fixture(name: str):
    return load_design(FIXTURES / f"{name}.txt")


@pytest.fixture(scope="session")
def load():
    return fixture


@pytest.fixture(scope="session")
def enum():
    return enumeration


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _CRITERIA[n] = (text, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        text, verdict = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}  {text}")
