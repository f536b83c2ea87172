"""Order-hbar^0 backend: stabilizer states as Wigner delta sets {x : Phi x = r}.

A Clifford map g(x) = M x + b moves the Wigner function forward, so the new
delta set is g({x : Phi x = r}) = {y : Phi M^-1 y = r + Phi M^-1 b}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import dense, zmod
from .dense import DenseState, Gate
from .errors import InvariantViolated, NoGaussianForm, NotClifford
from .harmonic import AffineSymplecticMap, GateCatalogEntry, catalog
from .weyl import WignerTable, density_from_wigner, wigner_pure
from .zmod import DEFAULT_CAP, Dim

SUPPORT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class StabilizerState:
    Phi: np.ndarray
    r: np.ndarray
    dim: Dim
    steps: int = 0  # number of affine maps applied, one per Clifford gate

    def __post_init__(self):
        object.__setattr__(self, "Phi", zmod.reduce(self.Phi, self.dim.d))
        object.__setattr__(self, "r", zmod.reduce(self.r, self.dim.d))

    def delta_set(self, cap: int = DEFAULT_CAP) -> np.ndarray:
        return zmod.solve_affine(self.Phi, self.r, self.dim.d, cap)


def zero_state(dim: Dim) -> StabilizerState:
    """|0...0>: the condition x_q = 0."""
    n = dim.n
    Phi = np.zeros((2 * n, 2 * n), dtype=np.int64)
    Phi[n:, n:] = zmod.identity(n)
    return StabilizerState(Phi, np.zeros(2 * n, dtype=np.int64), dim)


def apply_clifford(s: StabilizerState, op: AffineSymplecticMap | GateCatalogEntry) -> StabilizerState:
    if isinstance(op, GateCatalogEntry):
        if op.hbar_order != 0:
            raise NotClifford(f"{op.gate.kind} needs the order-hbar^1 reflection-sum backend")
        op = op.map
    d = s.dim.d
    Minv = zmod.symplectic_inverse(op.M, d)
    Phi = zmod.matmul(s.Phi, Minv, d=d)
    r = s.r + zmod.matmul(Phi, op.b, d=d)
    return StabilizerState(Phi, r, s.dim, s.steps + 1)


def apply_gate(s: StabilizerState, gate: Gate) -> StabilizerState:
    return apply_clifford(s, catalog(gate, s.dim))


def simulate(circuit: Iterable[Gate], dim: Dim) -> StabilizerState:
    s = zero_state(dim)
    for g in circuit:
        s = apply_gate(s, g)
    return s


def wigner_table(s: StabilizerState, cap: int = DEFAULT_CAP) -> WignerTable:
    """d^-n on the delta set, zero elsewhere."""
    d, n = s.dim.d, s.dim.n
    pts = s.delta_set(cap)
    if len(pts) != d**n:
        raise InvariantViolated(f"delta set has {len(pts)} points, expected {d ** n}")
    vals = np.zeros((d,) * (2 * n))
    vals[tuple(pts.T)] = 1.0 / d**n
    return WignerTable(vals, s.dim)


def to_dense(s: StabilizerState, cap: int = DEFAULT_CAP) -> DenseState:
    """A state vector (arbitrary global phase) with this Wigner function."""
    rho = density_from_wigner(wigner_table(s, cap)).matrix
    _, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    v = vecs[:, -1]
    k = np.argmax(np.abs(v))
    return DenseState(v * abs(v[k]) / v[k], s.dim)


# ---------------------------------------------------------------- Gaussian forms

@dataclass(frozen=True, eq=False)
class GaussianForm:
    """Psi(x) = d^(-n/2) omega^(x^T theta x + eta . x), x_i = p_i or q_i per ``basis``."""

    basis: tuple
    theta: np.ndarray
    eta: np.ndarray

    def to_json(self) -> dict:
        return {"basis": list(self.basis), "theta": self.theta.tolist(), "eta": self.eta.tolist()}


def _to_mixed(amp: np.ndarray, basis, d: int) -> np.ndarray:
    """Position tensor -> amplitudes in the mixed basis (F^dagger on p qudits)."""
    Fd = dense.local_matrix(Gate("F", (0,)), d).conj().T
    for i, b in enumerate(basis):
        if b == "p":
            amp = dense.apply_local(Fd, amp, [i], d)
    return amp


def gaussian_state(g: GaussianForm, dim: Dim) -> DenseState:
    d, n = dim.d, dim.n
    theta = zmod.reduce(g.theta, d)
    eta = zmod.reduce(g.eta, d)
    grid = np.indices((d,) * n).reshape(n, -1).T
    expo = np.einsum("ki,ij,kj->k", grid, theta, grid) + grid @ eta
    amp = (np.exp(2j * np.pi * np.mod(expo, d) / d) / d ** (n / 2)).reshape((d,) * n)
    F = dense.local_matrix(Gate("F", (0,)), d)
    for i, b in enumerate(g.basis):
        if b == "p":
            amp = dense.apply_local(F, amp, [i], d)
    return DenseState(amp, dim)


def _fit_quadratic_phase(amp: np.ndarray, d: int, n: int, tol: float):
    """Read theta, eta off phase ratios amp(x)/amp(0); None when the phases are off-lattice."""
    flat = amp.reshape(-1)
    if np.abs(np.abs(flat) - d ** (-n / 2)).max() > tol:
        return None
    ratio = amp / amp[(0,) * n]
    k = np.rint(np.angle(ratio) * d / (2 * np.pi)).astype(np.int64) % d
    if np.abs(ratio - np.exp(2j * np.pi * k / d)).max() > tol:
        return None
    h = zmod.half(d)
    e = np.eye(n, dtype=np.int64)

    def K(v):
        return int(k[tuple(np.mod(v, d))])

    theta = np.zeros((n, n), dtype=np.int64)
    eta = np.zeros(n, dtype=np.int64)
    for i in range(n):
        theta[i, i] = h * (K(2 * e[i]) - 2 * K(e[i])) % d
        eta[i] = (K(e[i]) - theta[i, i]) % d
    for i, j in itertools.combinations(range(n), 2):
        theta[i, j] = theta[j, i] = h * (K(e[i] + e[j]) - K(e[i]) - K(e[j])) % d
    return theta, eta


def mixed_representation_search(psi: DenseState, tol: float = 1e-9) -> GaussianForm:
    """Find a per-qudit p/q basis in which psi is a quadratic-phase plane wave.

    Raises NoGaussianForm when no basis choice works; for odd prime d this
    only happens for non-stabilizer input.
    """
    d, n = psi.dim.d, psi.dim.n
    amp0 = psi.normalized().tensor()
    for basis in itertools.product("qp", repeat=n):
        fit = _fit_quadratic_phase(_to_mixed(amp0, basis, d), d, n, tol)
        if fit is None:
            continue
        form = GaussianForm(tuple(basis), *fit)
        if dense.equal_up_to_global_phase(psi.normalized(), gaussian_state(form, psi.dim), tol):
            return form
    raise NoGaussianForm("no mixed position/momentum Gaussian form reproduces this state")


def is_stabilizer(psi: DenseState, tol: float = 1e-10) -> bool:
    """Non-negativity test of the Wigner function."""
    return bool(wigner_pure(psi.normalized()).values.min() >= -tol)


# ---------------------------------------------------------------- support classes

@dataclass(frozen=True)
class SupportClass:
    d: int
    q_support: tuple  # per-qudit number of q values with nonzero probability
    p_support: tuple

    @property
    def q_maximal(self) -> tuple:
        return tuple(c == self.d for c in self.q_support)

    @property
    def p_maximal(self) -> tuple:
        return tuple(c == self.d for c in self.p_support)

    @staticmethod
    def _label(q: bool, p: bool) -> str:
        return {(True, True): "both", (True, False): "q-only", (False, True): "p-only"}.get((q, p), "neither")

    @property
    def per_qudit(self) -> tuple:
        return tuple(self._label(q, p) for q, p in zip(self.q_maximal, self.p_maximal))

    @property
    def overall(self) -> str:
        return self._label(all(self.q_maximal), all(self.p_maximal))

    def to_json(self) -> dict:
        return {
            "q_support": list(self.q_support),
            "p_support": list(self.p_support),
            "per_qudit": list(self.per_qudit),
            "class": self.overall,
        }


def _marginal(prob: np.ndarray, i: int) -> np.ndarray:
    return prob.sum(axis=tuple(a for a in range(prob.ndim) if a != i))


def support_classification(psi: DenseState, tol: float = SUPPORT_TOL) -> SupportClass:
    d, n = psi.dim.d, psi.dim.n
    amp = psi.normalized().tensor()
    Fd = dense.local_matrix(Gate("F", (0,)), d).conj().T
    q_counts, p_counts = [], []
    for i in range(n):
        q_counts.append(int((_marginal(np.abs(amp) ** 2, i) > tol).sum()))
        mom = dense.apply_local(Fd, amp, [i], d)
        p_counts.append(int((_marginal(np.abs(mom) ** 2, i) > tol).sum()))
    return SupportClass(d, tuple(q_counts), tuple(p_counts))


def support_from_wigner(tbl: WignerTable, tol: float = 1e-10) -> SupportClass:
    """Same classification from Wigner marginals (no state vector needed)."""
    n = tbl.dim.n
    q = tuple(int((tbl.marginal(i, "q") > tol).sum()) for i in range(n))
    p = tuple(int((tbl.marginal(i, "p") > tol).sum()) for i in range(n))
    return SupportClass(tbl.dim.d, q, p)

