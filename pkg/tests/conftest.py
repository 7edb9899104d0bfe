from __future__ import annotations

import sys
from pathlib import Path

import pytest

from fixlocus.corpus import fuchsian_corpus, random_corpus

DATA = Path(__file__).resolve().parent.parent / "src" / "fixlocus" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def corpus():
    return fuchsian_corpus()


@pytest.fixture(scope="session")
def randomized():
    return random_corpus(50, seed=1)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
