import numpy as np
import pytest

from qws.circuits import random_clifford_circuit
from qws.dense import basis_state, run
from qws.zmod import Dim

# filled by test_acceptance, echoed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def reachable_states(dim, count, rng, max_len=12):
    """(circuit, dense state) pairs for random Clifford circuits on |0...0>."""
    out = []
    for _ in range(count):
        circ = random_clifford_circuit(dim, int(rng.integers(0, max_len + 1)), rng)
        out.append((circ, run(circ, basis_state((0,) * dim.n, dim))))
    return out


def random_operator(dim, rng):
    shape = (dim.hilbert, dim.hilbert)
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


ALL_DIMS = [Dim(3), Dim(5), Dim(7), Dim(3, 2)]
