import pytest

from zdeep import carmichael as cm


@pytest.fixture(scope="session")
def bundled_values():
    return cm.ingest_oeis_bfile(cm.bundled_bfile())


@pytest.fixture(scope="session")
def bundled_records(bundled_values):
    return cm.records_from_values(bundled_values)


@pytest.fixture(scope="session")
def records_1e6():
    return cm.records_from_values(cm.iter_carmichaels(10**6))


_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def report():
    """Record one pass/fail line per acceptance criterion."""

    def _report(criterion, passed, detail):
        line = f"criterion {str(criterion):>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: (int(s.split()[1].rstrip(":b")), s)):
            terminalreporter.write_line(line)
