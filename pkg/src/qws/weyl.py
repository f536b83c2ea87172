"""Translation and reflection operators, chord/center transforms, Wigner functions.

Phase-space tables are arrays of shape ``(d,) * 2n`` whose axes are
``(x_p0, ..., x_p{n-1}, x_q0, ..., x_q{n-1})``; flattening in C order gives
the row-major layout with x_p varying slowest.

Multi-qudit translations and reflections factor into tensor products of the
single-qudit ones, which is what every transform here exploits.
"""
from __future__ import annotations

import functools
import io
from dataclasses import dataclass

import numpy as np

from .dense import DenseOperator, DenseState
from .errors import ShapeMismatch
from .zmod import Dim, half, phase_space_points

ZERO_CUTOFF = 1e-12


@functools.lru_cache(maxsize=None)
def _translation_stack(d: int) -> np.ndarray:
    """Ts[xi_p, xi_q] = omega^(-inv2 xi_p xi_q) Z^xi_p X^xi_q, shape (d, d, d, d)."""
    w = np.exp(2j * np.pi / d)
    j = np.arange(d)
    h = half(d)
    Ts = np.zeros((d, d, d, d), dtype=complex)
    for a in range(d):
        for b in range(d):
            # <m| Z^a X^b |k> = omega^(a m) delta(m, k + b)
            op = np.zeros((d, d), dtype=complex)
            op[(j + b) % d, j] = w ** ((a * ((j + b) % d)) % d)
            Ts[a, b] = w ** ((-h * a * b) % d) * op
    Ts.flags.writeable = False
    return Ts


def _kernel(d: int, sign: int) -> np.ndarray:
    """K[x_p, x_q, xi_p, xi_q] = omega^(sign * xi^T J x) for one qudit."""
    w = np.exp(2j * np.pi / d)
    x = np.arange(d)
    xp, xq = x[:, None, None, None], x[None, :, None, None]
    xi_p, xi_q = x[None, None, :, None], x[None, None, None, :]
    # xi^T J x = -xi_p x_q + xi_q x_p
    return w ** np.mod(sign * (xi_q * xp - xi_p * xq), d)


@functools.lru_cache(maxsize=None)
def _reflection_stack(d: int) -> np.ndarray:
    """Rs[x_p, x_q] = d^-1 sum_xi omega^(xi^T J x) T(xi), the defining sum."""
    Rs = np.einsum("xyab,abmk->xymk", _kernel(d, +1), _translation_stack(d)) / d
    Rs.flags.writeable = False
    return Rs


def _kron_all(mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def _split(v, dim: Dim):
    v = np.mod(np.asarray(v, dtype=np.int64).reshape(-1), dim.d)
    if v.size != 2 * dim.n:
        raise ShapeMismatch(f"phase-space vector must have length {2 * dim.n}, got {v.size}")
    return v[: dim.n], v[dim.n :]


def translation_op(xi, dim: Dim) -> DenseOperator:
    p, q = _split(xi, dim)
    Ts = _translation_stack(dim.d)
    return DenseOperator(_kron_all(Ts[a, b] for a, b in zip(p, q)), dim)


def reflection_op(x, dim: Dim) -> DenseOperator:
    p, q = _split(x, dim)
    Rs = _reflection_stack(dim.d)
    return DenseOperator(_kron_all(Rs[a, b] for a, b in zip(p, q)), dim)


@dataclass
class PhaseSpaceTable:
    values: np.ndarray
    dim: Dim

    def __post_init__(self):
        shape = (self.dim.d,) * (2 * self.dim.n)
        values = np.asarray(self.values)
        if values.size != np.prod(shape):
            raise ShapeMismatch(f"table of size {values.size} does not fit {shape}")
        self.values = values.reshape(shape)

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def __getitem__(self, x):
        return self.values[tuple(np.mod(np.asarray(x, dtype=np.int64), self.dim.d))]


class ChordTable(PhaseSpaceTable):
    pass


class CenterTable(PhaseSpaceTable):
    pass


class WignerTable(PhaseSpaceTable):
    """Real-valued Wigner function of a state."""

    def __post_init__(self):
        super().__post_init__()
        self.values = np.asarray(self.values, dtype=float)

    def support(self, tol: float = 1e-10) -> np.ndarray:
        """Points (rows of length 2n) where |W| > tol, lexicographic order."""
        pts = phase_space_points(self.dim.n, self.dim.d)
        return pts[np.abs(self.flat()) > tol]

    def marginal(self, qudit: int, axis: str) -> np.ndarray:
        """Probability distribution of q_i (axis='q') or p_i (axis='p').

        Summing the Wigner function over every coordinate except x_{q_i}
        (resp. x_{p_i}) gives |Psi(q_i)|^2 (resp. |Psi(p_i)|^2).
        """
        n = self.dim.n
        keep = qudit + (n if axis == "q" else 0)
        others = tuple(a for a in range(2 * n) if a != keep)
        return self.values.sum(axis=others)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"{self.dim.d},{self.dim.n}\n")
        pts = phase_space_points(self.dim.n, self.dim.d)
        for x, v in zip(pts, self.flat()):
            v = 0.0 if abs(v) < ZERO_CUTOFF else float(v)
            buf.write(",".join(str(int(c)) for c in x) + f",{v:.12g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "WignerTable":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        d, n = (int(t) for t in lines[0].split(","))
        dim = Dim(d, n)
        values = np.zeros((d,) * (2 * n))
        for ln in lines[1:]:
            *x, v = ln.split(",")
            values[tuple(int(c) for c in x)] = float(v)
        return cls(values, dim)


def _contract_operator(A: np.ndarray, stack: np.ndarray, n: int, d: int) -> np.ndarray:
    """sum_{m,k} stack_i[a, b, m_i, k_i] A[m, k] for every qudit, axes (p..., q...)."""
    t = A.reshape((d,) * (2 * n))
    for i in range(n):
        t = np.tensordot(t, stack, axes=([0, n - i], [2, 3]))
    perm = [2 * i for i in range(n)] + [2 * i + 1 for i in range(n)]
    return t.transpose(perm)


def _expand_table(values: np.ndarray, stack: np.ndarray, n: int, d: int) -> np.ndarray:
    """sum_x values[x] * (tensor product of stack[x_i]) as a d^n x d^n matrix."""
    perm = [a for i in range(n) for a in (i, n + i)]
    t = values.transpose(perm)
    for _ in range(n):
        t = np.tensordot(t, stack, axes=([0, 1], [0, 1]))
    # axes now (m0, k0, m1, k1, ...)
    t = t.transpose([2 * i for i in range(n)] + [2 * i + 1 for i in range(n)])
    return t.reshape(d**n, d**n)


def chord_repr(A: DenseOperator) -> ChordTable:
    """A_xi = d^-n Tr(T(xi)^dagger A)."""
    d, n = A.dim.d, A.dim.n
    vals = _contract_operator(A.matrix, _translation_stack(d).conj(), n, d) / d**n
    return ChordTable(vals, A.dim)


def center_repr(A: DenseOperator) -> CenterTable:
    """A_x = d^-n Tr(R(x)^dagger A)."""
    d, n = A.dim.d, A.dim.n
    vals = _contract_operator(A.matrix, _reflection_stack(d).conj(), n, d) / d**n
    return CenterTable(vals, A.dim)


def reconstruct_from_chord(tbl: ChordTable) -> DenseOperator:
    """A = sum_xi A_xi T(xi)."""
    d, n = tbl.dim.d, tbl.dim.n
    return DenseOperator(_expand_table(np.asarray(tbl.values, dtype=complex), _translation_stack(d), n, d), tbl.dim)


def reconstruct_from_center(tbl: CenterTable) -> DenseOperator:
    """A = sum_x A_x R(x)."""
    d, n = tbl.dim.d, tbl.dim.n
    return DenseOperator(_expand_table(np.asarray(tbl.values, dtype=complex), _reflection_stack(d), n, d), tbl.dim)


def _fourier(values: np.ndarray, n: int, d: int, sign: int) -> np.ndarray:
    # K[x_p, x_q, xi_p, xi_q]; contract the (xi_p_i, xi_q_i) pair of every qudit
    K = _kernel(d, sign) / d
    perm = [a for i in range(n) for a in (i, n + i)]
    t = values.transpose(perm)
    for _ in range(n):
        t = np.tensordot(t, K, axes=([0, 1], [2, 3]))
    return t.transpose([2 * i for i in range(n)] + [2 * i + 1 for i in range(n)])


def symplectic_fourier(tbl: ChordTable) -> CenterTable:
    """Chord table -> center table, d^-n sum_xi omega^(-xi^T J x) A_xi."""
    d, n = tbl.dim.d, tbl.dim.n
    return CenterTable(_fourier(np.asarray(tbl.values, dtype=complex), n, d, -1), tbl.dim)


def inverse_symplectic_fourier(tbl: CenterTable) -> ChordTable:
    """Center table -> chord table, d^-n sum_x omega^(+xi^T J x) A_x.

    Since xi^T J x = -x^T J xi this is the forward contraction with the roles
    of x and xi swapped: the transform is its own inverse.
    """
    d, n = tbl.dim.d, tbl.dim.n
    return ChordTable(_fourier(np.asarray(tbl.values, dtype=complex), n, d, -1), tbl.dim)


def wigner_pure(psi: DenseState) -> WignerTable:
    """Wigner function of a pure state from its position amplitudes.

    W(x) = d^-n sum_{xi_q} omega^(-xi_q . x_p) Psi(x_q + h xi_q) Psi*(x_q - h xi_q)
    with h = (d+1)/2.
    """
    d, n = psi.dim.d, psi.dim.n
    h = half(d)
    amp = psi.tensor()
    grid = np.indices((d,) * n).reshape(n, -1)  # all x_q (or xi_q) vectors
    xq = grid[:, :, None]
    xi = grid[:, None, :]
    plus = tuple(np.mod(xq + h * xi, d))
    minus = tuple(np.mod(xq - h * xi, d))
    K = (amp[plus] * amp[minus].conj()).reshape((d,) * (2 * n))  # axes (x_q..., xi_q...)
    # sum over xi_q of omega^(-xi_q . x_p) K is a forward DFT over the xi axes
    F = np.fft.fftn(K, axes=tuple(range(n, 2 * n))) / d**n  # axes (x_q..., x_p...)
    vals = F.transpose(list(range(n, 2 * n)) + list(range(n)))
    return WignerTable(vals.real, psi.dim)


def density_from_wigner(tbl: WignerTable) -> DenseOperator:
    """rho = sum_x W(x) R(x), the inverse of the center transform of rho."""
    return reconstruct_from_center(CenterTable(np.asarray(tbl.values, dtype=complex), tbl.dim))
