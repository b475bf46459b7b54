import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pitheorem import load_example  # noqa: E402

CORPUS = Path(__file__).resolve().parents[1] / "src" / "pitheorem" / "corpus"


@pytest.fixture
def corpus_dir():
    return CORPUS


@pytest.fixture
def example():
    return load_example


# -- acceptance reporting -----------------------------------------------------

_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    _CRITERIA[number] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status, duration = _CRITERIA[number]
        terminalreporter.write_line(f"[{status}] AC{number:>2}  {title}  ({duration:.3f} s)")
