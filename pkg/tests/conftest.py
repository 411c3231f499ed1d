import pytest
from hypothesis import settings

from eta_lab import zeros

settings.register_profile("default", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("default")

# Critical-line ordinates of the first three zeta zeros, computed independently
# with mpmath.zetazero(k).imag at 30 digits and frozen here.
ORACLE_ZEROS = (14.134725141734693790, 21.022039638771554993, 25.010857580145688763)


@pytest.fixture(scope="session")
def line_zeros():
    """Zeros found on [0, 30] with the default scan, shared across modules."""
    return zeros.find_critical_line_zeros(0.0, 30.0)


# --- acceptance summary ---------------------------------------------------

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        for key, value in report.user_properties:
            if key == "criterion":
                number = value
    if number is None:
        return
    title = dict(report.user_properties).get("title", "")
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = "PASS" if report.outcome == "passed" else "FAIL"
        _acceptance[number] = (outcome, title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        outcome, title = _acceptance[number]
        terminalreporter.write_line(f"criterion {number:2d}: {outcome}  {title}")
