import pytest

from superend.exactalg import UniPoly

# acceptance results, printed in the terminal summary
ACCEPTANCE_LINES: list[tuple[int, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, label = marker.args
    status = "PASS" if report.passed else "FAIL"
    ACCEPTANCE_LINES.append((number, f"[{status}] criterion {number}: {label} ({report.duration:.2f} s)"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def poly():
    """Shorthand: poly(1, 0, -1) is x^2 - 1."""
    return lambda *coeffs: UniPoly.from_high(coeffs)
