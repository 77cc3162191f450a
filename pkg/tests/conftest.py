import pytest

from fresco.cases import CYCLIC, NONISOLATED, QUINTIC, TWOCUBICS
from fresco.core import analyze
from fresco.polyparse import parse_poly

FAMILY_BY_ID = {f.id: f for f in (QUINTIC, CYCLIC, NONISOLATED, TWOCUBICS)}

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion tag")


def pytest_runtest_logreport(report):
    marks = getattr(report, "criterion", None)
    if marks is None:
        return
    num, title = marks
    entry = _criteria.setdefault(num, {"title": title, "ok": True, "seen": False})
    if report.when == "call" or report.outcome != "passed":
        entry["seen"] = True
        if report.outcome != "passed":
            entry["ok"] = False


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["ok"] and e["seen"] else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {e['title']}")


@pytest.fixture(scope="session")
def setups():
    return {fid: analyze(parse_poly(f.poly, f.variables)) for fid, f in FAMILY_BY_ID.items()}
