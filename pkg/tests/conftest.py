"""Shared fixtures and the per-criterion acceptance summary."""
import time
from collections import OrderedDict

import pytest

from hblab import exemplars

_CRITERIA = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = getattr(report, "criterion", None)
    if n is None:
        return
    ok = report.outcome == "passed"
    _CRITERIA[n] = _CRITERIA.get(n, True) and ok


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status = "PASS" if _CRITERIA[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n:>2}: {status}")


@pytest.fixture(scope="session")
def wolf():
    """Default construction and its assembly time in seconds."""
    t0 = time.perf_counter()
    field = exemplars.wolf_assemble(exemplars.WolfParams())
    return field, time.perf_counter() - t0
