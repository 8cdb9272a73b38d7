import pytest

_VERDICTS: dict[int, bool] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n = mark.args[0]
    ok = rep.passed if rep.when == "call" else False
    _VERDICTS[n] = _VERDICTS.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_VERDICTS):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if _VERDICTS[n] else 'FAIL'}")
