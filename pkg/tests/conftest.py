import pytest


_ACCEPTANCE: list[tuple[str, bool]] = []


@pytest.fixture
def acceptance_record():
    """Record an acceptance criterion outcome for the end-of-run summary."""

    def record(name: str, ok: bool):
        _ACCEPTANCE.append((name, ok))
        assert ok, name

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
