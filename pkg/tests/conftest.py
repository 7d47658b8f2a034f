import pytest

from skewpbw import reduce

reduce.VERIFY_TRACES = True

# criterion id -> (passed, summary), filled by test_acceptance
ACCEPTANCE: dict = {}


@pytest.fixture(autouse=True)
def _verify_traces():
    # every stred call replays and telescopes its own trace
    reduce.VERIFY_TRACES = True
    yield


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        passed, text = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {key}: {text}")
