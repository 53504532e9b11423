import pytest

_criteria = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the end-of-run summary."""

    def record(number, detail):
        _criteria.setdefault(number, []).append((request.node.name, detail))

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and "criterion" in item.fixturenames:
        number = item.get_closest_marker("acceptance")
        if number is not None:
            _criteria.setdefault(("result", number.args[0]), []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    numbers = sorted({k[1] for k in _criteria if isinstance(k, tuple)})
    if not numbers:
        return
    terminalreporter.section("acceptance criteria")
    for n in numbers:
        ok = all(_criteria[("result", n)])
        details = "; ".join(d for _, d in _criteria.get(n, []))
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {details}")
