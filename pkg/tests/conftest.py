import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record the one-line verdict of an acceptance criterion."""

    def record(k: int, results: list[tuple[str, bool, str]], elapsed: float | None = None) -> list[str]:
        failed = [label for label, ok, _ in results if not ok]
        status = "PASS" if not failed else "FAIL"
        passed = len(results) - len(failed)
        line = f"CRITERION {k:2d}: {status} ({passed}/{len(results)} checks"
        line += f", {elapsed:.1f}s)" if elapsed is not None else ")"
        if failed:
            details = {label: why for label, ok, why in results if not ok}
            line += " failing: " + "; ".join(f"{lab} [{details[lab]}]" if details[lab] else lab for lab in failed)
        _LINES[k] = line
        print(line)
        return failed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_LINES):
        terminalreporter.write_line(_LINES[k])
