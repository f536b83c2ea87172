import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qws import dense
from qws.circuits import random_circuit_with_t
from qws.dense import DenseOperator, DenseState, Gate, basis_state, build_gate, compose, equal_up_to_global_phase
from qws.errors import BadTargets, DegenerateB, ShapeMismatch
from qws.zmod import Dim


def test_gate_validation():
    with pytest.raises(BadTargets):
        Gate("Q", (0,))
    with pytest.raises(BadTargets):
        Gate("C", (1, 1))
    with pytest.raises(BadTargets):
        Gate("F", (0, 1))
    with pytest.raises(BadTargets):
        build_gate(Gate("F", (2,)), Dim(3, 2))
    assert not Gate("T", (0,)).is_clifford
    assert Gate("C", (0, 1)).is_clifford


def test_fourier_entries():
    w = np.exp(2j * np.pi / 3)
    F = build_gate(Gate("F", (0,)), Dim(3)).matrix
    for m in range(3):
        for n in range(3):
            assert np.isclose(F[m, n], w ** (m * n) / np.sqrt(3))


def test_zero_power_is_identity():
    for kind in "ZX":
        assert np.allclose(build_gate(Gate(kind, (0,), 0), Dim(5)).matrix, np.eye(5))


def test_modular_t_entry():
    # (j-1) j inv(4) at j=2, d=5 is 2*4 = 8 = 3 mod 5
    assert dense.t_exponent(2, 5, modular=True) == 3
    T = build_gate(Gate("T", (0,)), Dim(5), modular_t=True).matrix
    assert np.isclose(T[2, 2], np.exp(2j * np.pi * 3 / 5))


def test_default_t_is_fractional_phase():
    d = 3
    T = build_gate(Gate("T", (0,)), Dim(d)).matrix
    expect = np.exp(2j * np.pi * np.array([0.0, 0.0, 0.5]) / d)
    assert np.allclose(np.diag(T), expect)
    # T^2 = P on the same register
    P = build_gate(Gate("P", (0,)), Dim(d)).matrix
    assert np.allclose(T @ T, P)


def test_controlled_shift_action():
    dim = Dim(3, 2)
    out = dense.apply_gate(Gate("C", (0, 1)), basis_state((2, 2), dim))
    assert np.isclose(abs(out.tensor()[2, 1]), 1.0)
    reverse = dense.apply_gate(Gate("C", (1, 0)), basis_state((2, 1), dim))
    assert np.isclose(abs(reverse.tensor()[0, 1]), 1.0)


def test_apply_examples():
    dim = Dim(3)
    psi = dense.random_state(dim, np.random.default_rng(0))
    assert np.allclose(dense.apply(DenseOperator(np.eye(3), dim), psi).amplitudes, psi.amplitudes)
    assert np.allclose(dense.apply_gate(Gate("X", (0,), 1), basis_state(0, dim)).amplitudes, [0, 1, 0])
    assert np.allclose(dense.apply_gate(Gate("F", (0,)), basis_state(0, dim)).amplitudes, np.ones(3) / np.sqrt(3))


def test_compose_examples():
    dim = Dim(5)
    assert np.allclose(compose([], dim).matrix, np.eye(5))
    assert equal_up_to_global_phase(compose([Gate("F", (0,))] * 4, dim), np.eye(5))
    zx = compose([Gate("Z", (0,), 1), Gate("X", (0,), 1)], dim).matrix
    xz = compose([Gate("X", (0,), 1), Gate("Z", (0,), 1)], dim).matrix
    # circuits act left to right, so [Z, X] is XZ
    assert np.allclose(xz, np.exp(2j * np.pi / 5) * zx)


def test_equal_up_to_global_phase_examples():
    dim = Dim(3)
    F = build_gate(Gate("F", (0,)), dim)
    P = build_gate(Gate("P", (0,)), dim)
    assert equal_up_to_global_phase(F, F)
    assert equal_up_to_global_phase(F, np.exp(2j * np.pi / 3) * F.matrix)
    assert not equal_up_to_global_phase(F, P)
    with pytest.raises(DegenerateB):
        equal_up_to_global_phase(F, np.zeros((3, 3)))
    with pytest.raises(ShapeMismatch):
        equal_up_to_global_phase(F, np.eye(2))


def test_dense_oracle_size_limit():
    with pytest.raises(ShapeMismatch):
        build_gate(Gate("F", (0,)), Dim(7, 5))


def test_all_gates_unitary():
    for d in (3, 5, 15):
        dim = Dim(d, 2)
        for g in [Gate("F", (0,)), Gate("P", (1,)), Gate("T", (0,)), Gate("C", (1, 0)), Gate("Z", (1,), 2), Gate("X", (0,), 1)]:
            assert build_gate(g, dim).is_unitary()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 2**32 - 1))
def test_run_matches_compose(d, seed):
    rng = np.random.default_rng(seed)
    dim = Dim(d, 2)
    circ = random_circuit_with_t(dim, 6, 1, rng)
    psi = dense.random_state(dim, rng)
    via_matrix = compose(circ, dim).matrix @ psi.amplitudes
    assert np.allclose(dense.run(circ, psi).amplitudes, via_matrix)


def test_dense_state_shape_check():
    with pytest.raises(ShapeMismatch):
        DenseState(np.ones(4), Dim(3))
