import pytest

_LINES_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES_KEY] = []


@pytest.fixture
def report_criterion(request):
    """Record one acceptance line; all of them are echoed in the terminal summary."""
    lines = request.config.stash[_LINES_KEY]

    def record(number, name, passed, note=""):
        label = f"criterion {number:>2}" if number else "total       "
        line = f"{label} {'PASS' if passed else 'FAIL'}  {name}" + (f"  ({note})" if note else "")
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
