import pytest

_criteria: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion; the terminal summary prints them all."""

    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        _criteria[number] = (title, bool(passed), detail)
        print(f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} {detail}")
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed, detail = _criteria[number]
        terminalreporter.write_line(
            f"{'PASS' if passed else 'FAIL'}  {number:>2}. {title}  {detail}"
        )
