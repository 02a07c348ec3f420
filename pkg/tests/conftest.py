import pytest

_LINES = {}


@pytest.fixture
def criterion():
    """Record the one-line outcome of an acceptance criterion."""
    def record(key, ok: bool, note: str = ""):
        _LINES[key] = f"criterion {key}: {'PASS' if ok else 'FAIL'}" + (f"  ({note})" if note else "")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_LINES, key=lambda k: (int(str(k).split()[0]), str(k))):
        terminalreporter.write_line(_LINES[key])
