import numpy as np
import pytest


ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def set1():
    """J_H = 3/2, J_I = 1: the magnetization/susceptibility parameter set."""
    return 1.5, 1.0


@pytest.fixture
def set2():
    return 2.0, 1.0


@pytest.fixture
def acceptance_report(request):
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, [])

    def record(criterion, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion:>2}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
