import pytest

# Acceptance summary: one line per criterion at the end of the run.

_RESULTS: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    cid, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _RESULTS.get(cid, ("PASS", title))[0]
        status = "PASS" if report.outcome == "passed" and prev == "PASS" else "FAIL"
        _RESULTS[cid] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_RESULTS, key=lambda c: int(c.split(".")[0])):
        status, title = _RESULTS[cid]
        terminalreporter.write_line(f"[{status}] criterion {cid}: {title}")
