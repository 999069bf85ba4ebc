"""Acceptance bookkeeping: tests marked ``criterion(n, title)`` roll up into one line per criterion."""

import pytest

_TITLES: dict[int, str] = {}
_NODES: dict[str, int] = {}
_OUTCOMES: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            n, title = m.args
            _TITLES[n] = title
            _NODES[item.nodeid] = n


def pytest_runtest_logreport(report):
    n = _NODES.get(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.failed:
        _OUTCOMES.setdefault(n, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _TITLES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_TITLES):
        runs = _OUTCOMES.get(n, [])
        status = "PASS" if runs and all(runs) else ("NOT RUN" if not runs else "FAIL")
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {_TITLES[n]}")


@pytest.fixture(scope="session")
def report_line(request):
    """Attach a short detail string to the terminal output of the current test."""
    tr = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(text):
        if tr is not None:
            tr.write_line(f"    {text}")

    return emit
