import numpy as np
import pytest

from relaylab.channel import SnrTriple

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    def record(name: str, ok: bool, detail: str) -> bool:
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        print(_ACCEPTANCE_LINES[-1])
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_relay_channels(seed: int, n: int, low: float = -2.0, high: float = 6.0):
    """Log-uniform channels with lambda01 > lambda02 from numpy's generator."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        a, b, c = 10.0 ** rng.uniform(low, high, 3)
        if a > b * (1 + 1e-9):
            out.append(SnrTriple(a, b, c))
    return out
