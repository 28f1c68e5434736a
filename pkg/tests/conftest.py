import numpy as np
import pytest

from suncontrol.system import ControlSystem

ACCEPTANCE_LINES = []


def system_from_B(energies, B, **kw):
    """ControlSystem whose control matrix is exactly ``B`` (coupling = iB)."""
    return ControlSystem.from_hamiltonians(energies, 1j * np.asarray(B, dtype=complex), **kw)


def coupling_from_pairs(n, pairs, value=1.0):
    H = np.zeros((n, n), dtype=complex)
    for k, (i, j) in enumerate(pairs):
        v = value[k] if np.ndim(value) else value
        H[i, j] = v
        H[j, i] = np.conj(v)
    return H


def random_su(n, rng, scale=1.0):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = 0.5 * (g - g.conj().T)
    m -= np.trace(m) / n * np.eye(n)
    return scale * m


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance_log():
    def log(number, ok, detail):
        line = f"[acceptance {number}] {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
