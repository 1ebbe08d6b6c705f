import pytest

# filled by test_acceptance; echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance table")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_checks():
    def record(checks):
        for c in checks:
            line = c.line()
            ACCEPTANCE_LINES.append(line)
            print(line)
        return checks

    return record
