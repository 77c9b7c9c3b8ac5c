import pytest

from lattcert import kernels

_criteria = {}


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    old = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(old)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or rep.failed:
        prev = _criteria.get(number)
        ok = rep.passed and (prev is None or prev[1])
        _criteria[number] = (title, ok, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criteria):
        title, ok, duration = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{number:2d}] {title} ({duration:.2f}s)")
