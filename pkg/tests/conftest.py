import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion(capsys):
    """Record and echo one pass/fail line for an acceptance criterion."""

    def report(number: int, passed: bool, detail: str):
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'} - {detail}"
        ACCEPTANCE[number] = line
        with capsys.disabled():
            print("\n" + line)
        return passed

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
