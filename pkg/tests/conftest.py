import numpy as np
import pytest

from qwabsorb.core import QubitState

SEED = 0x5EED


def random_qubits(count, seed=SEED):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        out.append(QubitState(complex(v[0], v[1]), complex(v[2], v[3])))
    return out


@pytest.fixture
def qubits():
    return random_qubits(20)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
