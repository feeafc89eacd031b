import pytest

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    entry = _criteria.setdefault(mark.args[0], [True, 0.0, []])
    entry[0] &= rep.passed
    entry[1] += rep.duration  # setup time covers the shared campaign fixtures
    if rep.when == "call" or rep.failed:
        entry[2].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, secs, names = _criteria[n]
        terminalreporter.write_line(
            f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:.1f} s, {len(names)} checks)")
