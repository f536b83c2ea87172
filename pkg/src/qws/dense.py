"""Dense state-vector / matrix oracle.

Computational index convention: qudit 0 is the most significant digit, so a
state of n qudits reshapes to a tensor of shape ``(d,) * n`` with axis i
belonging to qudit i.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadTargets, DegenerateB, ShapeMismatch
from .zmod import Dim, half

GATE_KINDS = ("F", "P", "C", "T", "Z", "X")
MAX_HILBERT = 3125


@dataclass(frozen=True)
class Gate:
    """One circuit instruction.

    ``kind`` is one of F (Fourier/Hadamard), P (phase shift), C (controlled
    shift, targets = (control, target)), T, Z (boost power) or X (shift
    power).  ``power`` is only meaningful for Z and X.
    """

    kind: str
    targets: tuple
    power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind not in GATE_KINDS:
            raise BadTargets(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind == "C" else 1
        if len(self.targets) != want:
            raise BadTargets(f"{self.kind} takes {want} target(s), got {self.targets}")
        if len(set(self.targets)) != len(self.targets):
            raise BadTargets(f"repeated target in {self.targets}")

    def check(self, dim: Dim) -> None:
        if any(t < 0 or t >= dim.n for t in self.targets):
            raise BadTargets(f"targets {self.targets} out of range for n={dim.n}")

    @property
    def is_clifford(self) -> bool:
        return self.kind != "T"


@dataclass
class DenseState:
    amplitudes: np.ndarray
    dim: Dim

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.size != self.dim.hilbert:
            raise ShapeMismatch(f"state has {self.amplitudes.size} amplitudes, expected {self.dim.hilbert}")

    def normalized(self) -> "DenseState":
        return DenseState(self.amplitudes / np.linalg.norm(self.amplitudes), self.dim)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.dim.d,) * self.dim.n)


@dataclass
class DenseOperator:
    matrix: np.ndarray
    dim: Dim

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        N = self.dim.hilbert
        if self.matrix.shape != (N, N):
            raise ShapeMismatch(f"operator has shape {self.matrix.shape}, expected {(N, N)}")

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            _same_dim(self.dim, other.dim)
            return DenseOperator(self.matrix @ other.matrix, self.dim)
        return NotImplemented

    def dagger(self) -> "DenseOperator":
        return DenseOperator(self.matrix.conj().T, self.dim)

    def is_unitary(self, tol: float = 1e-10) -> bool:
        N = self.dim.hilbert
        return bool(np.abs(self.matrix.conj().T @ self.matrix - np.eye(N)).max() <= tol)


def _same_dim(a: Dim, b: Dim) -> None:
    if a != b:
        raise ShapeMismatch(f"dimension mismatch: {a} vs {b}")


def basis_state(index: Sequence[int] | int, dim: Dim) -> DenseState:
    """Computational basis state |q_0 ... q_{n-1}>."""
    psi = np.zeros((dim.d,) * dim.n, dtype=complex)
    idx = (index,) if np.isscalar(index) else tuple(index)
    psi[tuple(int(i) % dim.d for i in idx)] = 1.0
    return DenseState(psi, dim)


def random_state(dim: Dim, rng: np.random.Generator) -> DenseState:
    """Haar-random pure state."""
    v = rng.normal(size=dim.hilbert) + 1j * rng.normal(size=dim.hilbert)
    return DenseState(v / np.linalg.norm(v), dim)


def t_exponent(j, d: int, modular: bool = False):
    """Exponent e in the T-gate phase omega^e for basis label j in [0, d).

    By default e = (j-1) j / 4 as a rational number, which makes T a
    genuinely non-Clifford gate.  ``modular=True`` gives (j-1) j inv(4) mod d
    instead; that gate is a power of P and therefore Clifford.
    """
    j = np.asarray(j, dtype=np.int64)
    if modular:
        return np.mod((j - 1) * j * pow(4, -1, d), d)
    return (j - 1) * j / 4.0


def local_matrix(gate: Gate, d: int, modular_t: bool = False) -> np.ndarray:
    """Matrix of a gate on its own support (d x d, or d^2 x d^2 for C)."""
    w = np.exp(2j * np.pi / d)
    j = np.arange(d)
    if gate.kind == "F":
        return w ** np.outer(j, j) / np.sqrt(d)
    if gate.kind == "P":
        return np.diag(w ** np.mod((j - 1) * j * half(d), d))
    if gate.kind == "T":
        return np.diag(np.exp(2j * np.pi * t_exponent(j, d, modular_t) / d))
    if gate.kind == "Z":
        return np.diag(w ** np.mod(j * gate.power, d))
    if gate.kind == "X":
        return np.roll(np.eye(d, dtype=complex), gate.power % d, axis=0)
    # C: |a, b> -> |a, b + a>
    U = np.zeros((d * d, d * d), dtype=complex)
    for a in range(d):
        for b in range(d):
            U[a * d + (b + a) % d, a * d + b] = 1.0
    return U


def apply_local(op: np.ndarray, tensor: np.ndarray, targets: Sequence[int], d: int) -> np.ndarray:
    """Apply a k-qudit matrix to axes ``targets`` of a ``(d,)*n + batch`` tensor."""
    k = len(targets)
    op_t = np.asarray(op).reshape((d,) * (2 * k))
    out = np.tensordot(op_t, tensor, axes=(list(range(k, 2 * k)), list(targets)))
    return np.moveaxis(out, list(range(k)), list(targets))


def embed(op: np.ndarray, targets: Sequence[int], dim: Dim) -> np.ndarray:
    """Full d^n x d^n matrix of a local operator acting on ``targets``."""
    N = dim.hilbert
    eye = np.eye(N, dtype=complex).reshape((dim.d,) * dim.n + (N,))
    return apply_local(op, eye, targets, dim.d).reshape(N, N)


def build_gate(gate: Gate, dim: Dim, modular_t: bool = False) -> DenseOperator:
    gate.check(dim)
    if dim.hilbert > MAX_HILBERT:
        raise ShapeMismatch(f"d^n = {dim.hilbert} too large for the dense oracle")
    return DenseOperator(embed(local_matrix(gate, dim.d, modular_t), gate.targets, dim), dim)


def apply(U: DenseOperator, psi: DenseState) -> DenseState:
    _same_dim(U.dim, psi.dim)
    return DenseState(U.matrix @ psi.amplitudes, psi.dim)


def apply_gate(gate: Gate, psi: DenseState, modular_t: bool = False) -> DenseState:
    """Apply one gate without forming the full matrix."""
    gate.check(psi.dim)
    d = psi.dim.d
    out = apply_local(local_matrix(gate, d, modular_t), psi.tensor(), gate.targets, d)
    return DenseState(out, psi.dim)


def run(circuit: Iterable[Gate], psi: DenseState, modular_t: bool = False) -> DenseState:
    for g in circuit:
        psi = apply_gate(g, psi, modular_t)
    return psi


def compose(circuit: Iterable[Gate], dim: Dim, modular_t: bool = False) -> DenseOperator:
    """Unitary of a circuit; the first gate in the list acts first."""
    U = np.eye(dim.hilbert, dtype=complex)
    for g in circuit:
        U = build_gate(g, dim, modular_t).matrix @ U
    return DenseOperator(U, dim)


def _array(a):
    if isinstance(a, DenseOperator):
        return a.matrix
    if isinstance(a, DenseState):
        return a.amplitudes
    return np.asarray(a)


def equal_up_to_global_phase(A, B, tol: float = 1e-10) -> bool:
    """True iff ||A - phi B||_max <= tol for the phase phi fixed by B's largest entry."""
    A, B = _array(A), _array(B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    idx = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    if np.abs(B[idx]) == 0:
        raise DegenerateB("reference operator is zero")
    ratio = A[idx] / B[idx]
    phi = ratio / abs(ratio) if abs(ratio) > 0 else 1.0
    return bool(np.abs(A - phi * B).max() <= tol)
