from pathlib import Path

import pytest

from farsiplag.corpus import load_corpus
from farsiplag.pipeline import Resources

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_DIR = FIXTURES / "corpus"

_acceptance: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def resources():
    return Resources.bundled()


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(CORPUS_DIR)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
