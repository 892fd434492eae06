import pytest

from adaptive_noma import SystemParams


@pytest.fixture
def unit_params():
    return SystemParams(phi=2.0, q=10.0, k_s=1.0, k_e=1.0)


@pytest.fixture
def default_params():
    return SystemParams(phi=2.0, q=10.0, k_s=30.0, k_e=1.0)


_REPORT_KEY = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record one PASS/FAIL line for the acceptance summary."""
    lines = request.config.stash.setdefault(_REPORT_KEY, [])

    def add(criterion: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'} {criterion}" + (f": {detail}" if detail else "")
        lines.append(line)
        print(line)
        return ok

    return add


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_REPORT_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
