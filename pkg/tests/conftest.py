import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ltd import fixtures  # noqa: E402


@pytest.fixture(scope="session")
def body():
    return fixtures.body_ontology()


@pytest.fixture(scope="session")
def diagnosis():
    return fixtures.diagnosis()


@pytest.fixture(scope="session")
def drug():
    return fixtures.drug()


@pytest.fixture(scope="session")
def data_dir():
    return fixtures.fixture_path("")


_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome for the terminal summary."""
    marker = request.node.get_closest_marker("criterion")
    name = marker.args[0] if marker else request.node.name
    _ACCEPTANCE[name] = (False, "did not finish")
    notes = {}
    yield notes
    if request.node.rep_call.passed:
        _ACCEPTANCE[name] = (True, notes.get("detail", ""))
    else:
        _ACCEPTANCE[name] = (False, notes.get("detail", "assertion failed"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
