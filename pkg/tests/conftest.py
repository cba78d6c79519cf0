"""Per-criterion summary for the acceptance suite.

Tests in ``test_acceptance.py`` carry ``@pytest.mark.criterion(k)``.  A
criterion passes when every test tagged with it passes; the terminal summary
prints one line per criterion.
"""
from collections import defaultdict

_results: dict[int, list[bool]] = defaultdict(list)
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            k = mark.args[0]
            _titles.setdefault(k, mark.args[1] if len(mark.args) > 1 else "")


def pytest_runtest_logreport(report):
    keywords = report.keywords
    if "criterion" not in keywords:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        k = _criterion_of(report)
        if k is not None:
            _results[k].append(report.outcome == "passed")


def _criterion_of(report):
    for k, title in _titles.items():
        if f"criterion_{k:02d}" in report.nodeid:
            return k
    return None


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_titles):
        outcomes = _results.get(k)
        if not outcomes:
            status = "SKIP"
        else:
            status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {k:2d}: {_titles[k]}")
