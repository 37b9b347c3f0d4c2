import numpy as np
import pytest

from qugame.hilbert import basis


@pytest.fixture
def b():
    """b[1]..b[4]: the two-qubit basis kets, one-based like the notation."""
    return {k: basis(4, k - 1) for k in range(1, 5)}


SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


@pytest.fixture
def swap():
    return SWAP.copy()


_CRITERIA = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_CRITERIA] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; it is printed now and again in the summary."""
    lines = request.config.stash[_CRITERIA]

    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
        print(line)
        lines.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
