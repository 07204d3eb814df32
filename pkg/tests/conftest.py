import pytest

_VERDICTS: list[tuple[str, bool, str]] = []


class Verdict:
    """Collects one pass/fail line per acceptance criterion."""

    def __call__(self, name: str, ok: bool, detail: str = "") -> bool:
        ok = bool(ok)
        line = f"{name}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        print(line)
        _VERDICTS.append((name, ok, detail))
        return ok


@pytest.fixture
def verdict():
    return Verdict()


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _VERDICTS:
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
