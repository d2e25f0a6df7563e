import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from clifpauli.fields import ComplexExact, ComplexFloat, RealExact  # noqa: E402

EXACT_FIELDS = [RealExact(), ComplexExact()]
ALL_FIELDS = EXACT_FIELDS + [ComplexFloat()]


def signatures(n):
    return [(p, n - p) for p in range(n + 1)]


@pytest.fixture(params=EXACT_FIELDS, ids=lambda f: f.name)
def exact_field(request):
    return request.param


@pytest.fixture(params=ALL_FIELDS, ids=lambda f: f.name)
def any_field(request):
    return request.param


# --- acceptance reporting ------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    entry = _criteria.setdefault(num, {"title": title, "ok": True, "ran": False})
    if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
        entry["ok"] = False
    if call.when == "call":
        entry["ran"] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        entry = _criteria[num]
        status = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {entry['title']}")
