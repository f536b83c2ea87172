"""Phase-space (affine symplectic) description of gates.

Conventions, all checked against the dense oracle in the test-suite:

* A gate's map ``x -> M x + b`` sends the center of a reflection to the
  center of the conjugated reflection, ``U R(x) U^dagger = R(M x + b)``.  It
  therefore moves Wigner functions forward: ``W_out(M x + b) = W_in(x)``.
* ``b = (M + I) alpha / 2``.
* The center generating function is ``S(x) = x^T B x + (J alpha) . x`` with
  ``J B = (I + M)^{-1} (I - M)``; the center representation of the gate is
  proportional to ``omega^S``.

Catalog entries keep exact rational coefficients (fractions.Fraction) so that
the non-Clifford T-gate, whose action is not periodic on the grid, can be
evaluated faithfully; Clifford entries reduce to Z_d without loss.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import zmod
from .dense import Gate
from .errors import CayleySingular, LegendreSingular, NonSymplecticResult, NotInvertible, ShapeMismatch
from .weyl import CenterTable
from .zmod import Dim


# ---------------------------------------------------------------- rationals

def _frac_array(a) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    return np.vectorize(Fraction, otypes=[object])(a) if a.size else a


def _frac_inv(M: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse over the rationals."""
    size = M.shape[0]
    aug = np.concatenate([_frac_array(M), _frac_array(np.eye(size, dtype=int))], axis=1)
    for k in range(size):
        piv = next((i for i in range(k, size) if aug[i, k] != 0), None)
        if piv is None:
            raise CayleySingular("matrix is singular over the rationals")
        aug[[k, piv]] = aug[[piv, k]]
        aug[k] = aug[k] / aug[k, k]
        for i in range(size):
            if i != k and aug[i, k] != 0:
                aug[i] = aug[i] - aug[i, k] * aug[k]
    return aug[:, size:]


def to_zd(a, d: int) -> np.ndarray:
    """Reduce an array of rationals mod d (denominators must be units)."""
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=np.int64)
    for idx, v in np.ndenumerate(a):
        v = Fraction(v)
        out[idx] = v.numerator * zmod.inv(v.denominator, d) % d
    return out


def _is_integral(a) -> bool:
    return all(Fraction(v).denominator == 1 for v in np.asarray(a, dtype=object).flat)


# ---------------------------------------------------------------- types

@dataclass(frozen=True, eq=False)
class AffineSymplecticMap:
    """x -> M x + b over Z_d."""

    M: np.ndarray
    b: np.ndarray
    d: int

    def __post_init__(self):
        object.__setattr__(self, "M", zmod.reduce(self.M, self.d))
        object.__setattr__(self, "b", zmod.reduce(self.b, self.d))
        if self.M.shape != (self.b.size, self.b.size) or self.b.size % 2:
            raise ShapeMismatch(f"bad map shapes {self.M.shape}, {self.b.shape}")

    @classmethod
    def identity(cls, dim: Dim) -> "AffineSymplecticMap":
        return cls(zmod.identity(2 * dim.n), np.zeros(2 * dim.n, dtype=np.int64), dim.d)

    @classmethod
    def from_alpha(cls, M, alpha, d: int) -> "AffineSymplecticMap":
        M = zmod.reduce(M, d)
        b = zmod.matmul(M + zmod.identity(M.shape[0]), zmod.reduce(alpha, d), d=d) * zmod.half(d)
        return cls(M, b, d)

    @property
    def n(self) -> int:
        return self.b.size // 2

    def __call__(self, x) -> np.ndarray:
        """Apply to one point or to the rows of a (k, 2n) array."""
        x = zmod.reduce(x, self.d)
        return np.mod(x @ self.M.T + self.b, self.d)

    def __eq__(self, other):
        return (
            isinstance(other, AffineSymplecticMap)
            and self.d == other.d
            and np.array_equal(self.M, other.M)
            and np.array_equal(self.b, other.b)
        )

    def alpha(self) -> np.ndarray:
        """alpha = 2 (M + I)^{-1} b; raises CayleySingular when M has eigenvalue -1."""
        try:
            Pinv = zmod.mat_inv(self.M + zmod.identity(2 * self.n), self.d)
        except NotInvertible as exc:
            raise CayleySingular("I + M is not invertible modulo d") from exc
        return zmod.reduce(2 * zmod.matmul(Pinv, self.b, d=self.d), self.d)

    def inverse(self) -> "AffineSymplecticMap":
        Minv = zmod.symplectic_inverse(self.M, self.d)
        return AffineSymplecticMap(Minv, -zmod.matmul(Minv, self.b, d=self.d), self.d)

    def is_symplectic(self) -> bool:
        return zmod.is_symplectic(self.M, self.d)


def compose_maps(*maps: AffineSymplecticMap) -> AffineSymplecticMap:
    """compose_maps(f, g)(x) = f(g(x)); more arguments nest the same way."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        d = f.d
        out = AffineSymplecticMap(zmod.matmul(f.M, out.M, d=d), zmod.matmul(f.M, out.b, d=d) + f.b, d)
    return out


@dataclass(frozen=True, eq=False)
class QuadraticAction:
    """S(x) = x^T B x + (J alpha) . x with exact rational B and alpha."""

    B: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        B = _frac_array(self.B)
        if B.ndim != 2 or B.shape[0] != B.shape[1] or (B != B.T).any():
            raise ShapeMismatch("B must be a symmetric square matrix")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "alpha", _frac_array(self.alpha).reshape(-1))

    @property
    def n(self) -> int:
        return self.B.shape[0] // 2

    @property
    def linear(self) -> np.ndarray:
        """Coefficient vector J alpha = (-alpha_q, alpha_p)."""
        n = self.n
        return np.concatenate([-self.alpha[n:], self.alpha[:n]])

    def is_integral(self) -> bool:
        """True when S takes integer values on integer points."""
        # x^T B x integral for all integer x iff diagonal integral and 2 B_ij integral
        diag_ok = _is_integral(np.diag(self.B))
        off_ok = _is_integral(2 * self.B)
        return diag_ok and off_ok and _is_integral(self.linear)

    def value(self, x) -> Fraction:
        """Exact S at the integer point x (no reduction of x)."""
        x = np.asarray([int(v) for v in np.asarray(x).reshape(-1)], dtype=object)
        return Fraction(x @ self.B @ x + self.linear @ x)

    def mod(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        """(B, J alpha) reduced to Z_d."""
        return to_zd(self.B, d), to_zd(self.linear, d)


def action_eval(a: QuadraticAction, x, d: int) -> int:
    """S(x) mod d."""
    B, L = a.mod(d)
    x = zmod.reduce(x, d)
    return int((x @ B @ x + L @ x) % d)


def center_function_from_action(a: QuadraticAction, dim: Dim) -> CenterTable:
    """Unit-modulus table exp(2 pi i S(x) / d) over grid representatives x in [0, d)."""
    d = dim.d
    pts = zmod.phase_space_points(dim.n, d)
    if a.is_integral():
        B, L = a.mod(d)
        S = np.mod(np.einsum("ki,ij,kj->k", pts, B, pts) + pts @ L, d)
        vals = np.exp(2j * np.pi * S / d)
    else:
        vals = np.array([np.exp(2j * np.pi * float(a.value(x) % d) / d) for x in pts])
    return CenterTable(vals, dim)


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """H(z) = z^T H2 z + h1 . z with z = (p, q)."""

    H2: np.ndarray
    h1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "H2", _frac_array(self.H2))
        object.__setattr__(self, "h1", _frac_array(self.h1).reshape(-1))


def discrete_eom(H: QuadraticHamiltonian, dim: Dim) -> AffineSymplecticMap:
    """One unit Euler step z' = z + J grad H(z), checked to be exactly symplectic."""
    size = 2 * dim.n
    if H.H2.shape != (size, size) or H.h1.size != size:
        raise ShapeMismatch("Hamiltonian does not match dim")
    J = _frac_array(zmod.symplectic_form(dim.n))
    M = _frac_array(np.eye(size, dtype=int)) + 2 * (J @ H.H2)
    b = J @ H.h1
    if ((M.T @ J @ M) != J).any():
        raise NonSymplecticResult("a single Euler step of this Hamiltonian is not symplectic")
    return AffineSymplecticMap(to_zd(M, dim.d), to_zd(b, dim.d), dim.d)


# ---------------------------------------------------------------- Cayley

def cayley_B_from_M(M, d: int) -> np.ndarray:
    """B with J B = (I + M)^{-1} (I - M) over Z_d."""
    M = zmod.reduce(M, d)
    size = M.shape[0]
    I = zmod.identity(size)
    try:
        Pinv = zmod.mat_inv(I + M, d)
    except NotInvertible as exc:
        raise CayleySingular("I + M is not invertible modulo d") from exc
    J = zmod.symplectic_form(size // 2, d)
    return zmod.reduce(-zmod.matmul(J, Pinv, I - M, d=d), d)


def cayley_M_from_B(B, d: int) -> np.ndarray:
    """Inverse relation M = (I - J B)(I + J B)^{-1}."""
    B = zmod.reduce(B, d)
    size = B.shape[0]
    I = zmod.identity(size)
    K = zmod.matmul(zmod.symplectic_form(size // 2, d), B, d=d)
    try:
        return zmod.matmul(I - K, zmod.mat_inv(I + K, d), d=d)
    except NotInvertible as exc:
        raise CayleySingular("I + J B is not invertible modulo d") from exc


def cayley_B_rational(M) -> np.ndarray:
    """Same relation over the rationals."""
    M = _frac_array(M)
    size = M.shape[0]
    I = _frac_array(np.eye(size, dtype=int))
    J = _frac_array(zmod.symplectic_form(size // 2))
    return -(J @ _frac_inv(I + M) @ (I - M))


def propagator_prefactor(M, d: int, exponent: float = 0.5) -> float:
    """|2^d det(I + M)|^exponent with M lifted to integers in (-d/2, d/2].

    Purely diagnostic.  The exponent appears as +1/2 and as -1/2 in different
    places of the semiclassical literature, hence the parameter.
    """
    M = zmod.reduce(M, d)
    size = M.shape[0]
    try:
        zmod.mat_inv(M + zmod.identity(size), d)
    except NotInvertible as exc:
        raise CayleySingular("I + M is not invertible modulo d") from exc
    lifted = zmod.symmetric_lift(M, d) + np.eye(size, dtype=np.int64)
    det = int(round(np.linalg.det(lifted)))
    return float(abs(2**d * det) ** exponent)


# ---------------------------------------------------------------- catalog

_H = Fraction(1, 2)
_Q = Fraction(1, 4)

# local (M, alpha, hbar_order) over the rationals, coordinates (p..., q...)
_LOCAL = {
    "F": ([[0, 1], [-1, 0]], [0, 0], 0),
    "P": ([[1, 1], [0, 1]], [-_H, 0], 0),
    "T": ([[1, _H], [0, 1]], [-_Q, 0], 1),
    "C": ([[1, -1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 1, 1]], [0, 0, 0, 0], 0),
}


@dataclass(frozen=True, eq=False)
class GateCatalogEntry:
    gate: Gate
    map: AffineSymplecticMap
    action: QuadraticAction
    hbar_order: int
    M_exact: np.ndarray  # rational, embedded in 2n x 2n


def _local_data(gate: Gate):
    if gate.kind == "Z":
        return [[1, 0], [0, 1]], [gate.power, 0], 0
    if gate.kind == "X":
        return [[1, 0], [0, 1]], [0, gate.power], 0
    return _LOCAL[gate.kind]


def _embed_indices(targets: Sequence[int], n: int) -> list[int]:
    return list(targets) + [n + t for t in targets]


def embed_local(M_local, alpha_local, targets: Sequence[int], n: int):
    """Embed a 2k x 2k rational matrix and 2k vector into 2n dimensions."""
    idx = _embed_indices(targets, n)
    M = _frac_array(np.eye(2 * n, dtype=int))
    alpha = _frac_array(np.zeros(2 * n, dtype=int))
    M_local = _frac_array(M_local)
    for a, i in enumerate(idx):
        alpha[i] = Fraction(alpha_local[a])
        for b, j in enumerate(idx):
            M[i, j] = M_local[a, b]
    return M, alpha


@functools.lru_cache(maxsize=4096)
def catalog(gate: Gate, dim: Dim) -> GateCatalogEntry:
    """Map, action and hbar order of one gate (cached; treat the arrays as read-only)."""
    gate.check(dim)
    M_local, alpha_local, order = _local_data(gate)
    B_local = cayley_B_rational(M_local)
    M, alpha = embed_local(M_local, alpha_local, gate.targets, dim.n)
    B = _frac_array(np.zeros((2 * dim.n, 2 * dim.n), dtype=int))
    idx = _embed_indices(gate.targets, dim.n)
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            B[i, j] = B_local[a, b]
    I = _frac_array(np.eye(2 * dim.n, dtype=int))
    b_vec = (M + I) @ alpha / 2
    amap = AffineSymplecticMap(to_zd(M, dim.d), to_zd(b_vec, dim.d), dim.d)
    return GateCatalogEntry(gate, amap, QuadraticAction(B, alpha), order, M)


def circuit_map(circuit: Sequence[Gate], dim: Dim) -> AffineSymplecticMap:
    """Affine map of a Clifford circuit (first gate acts first)."""
    out = AffineSymplecticMap.identity(dim)
    for g in circuit:
        out = compose_maps(catalog(g, dim).map, out)
    return out


def action_from_map(amap: AffineSymplecticMap) -> QuadraticAction:
    """Quadratic action of an arbitrary Clifford map with I + M invertible (over Z_d)."""
    d = amap.d
    return QuadraticAction(cayley_B_from_M(amap.M, d).astype(object), amap.alpha().astype(object))


# ---------------------------------------------------------------- Legendre

@dataclass(frozen=True, eq=False)
class PositionAction:
    """G(q', q) = z^T Q z + l . z mod d, z = (q', q), on the set K z = k (mod d).

    Constant terms are dropped (global phase).
    """

    Q: np.ndarray
    linear: np.ndarray
    K: np.ndarray
    k: np.ndarray
    d: int

    def allowed(self, qprime, q) -> bool:
        z = np.concatenate([np.reshape(qprime, -1), np.reshape(q, -1)]) % self.d
        return bool(np.all((self.K @ z - self.k) % self.d == 0)) if len(self.K) else True

    def __call__(self, qprime, q):
        """G mod d, or None when (q', q) violates the stationarity constraints."""
        if not self.allowed(qprime, q):
            return None
        z = np.concatenate([np.reshape(qprime, -1), np.reshape(q, -1)]) % self.d
        return int((z @ self.Q @ z + self.linear @ z) % self.d)


def position_action(a: QuadraticAction, dim: Dim) -> PositionAction:
    """Position-space action G(q', q) by the symmetrized Legendre transform.

    F(p) = S(p, (q'+q)/2) + p . (q' - q) is made stationary in p.  When the
    p-p block of B is invertible p is eliminated; when it vanishes, the
    stationarity condition becomes a linear constraint on (q', q) and G is F
    restricted to it; anything in between raises LegendreSingular.
    """
    d, n = dim.d, dim.n
    B, L = a.mod(d)
    Bpp, Bpq, Bqq = B[:n, :n], B[:n, n:], B[n:, n:]
    Lp, Lq = L[:n], L[n:]
    I = zmod.identity(n)
    H = zmod.half(d) * np.concatenate([I, I], axis=1)
    D = np.concatenate([I, -I], axis=1)
    C = zmod.reduce(2 * Bpq @ H + D, d)
    quad = zmod.matmul(H.T, Bqq, H, d=d)
    lin = zmod.matmul(H.T, Lq, d=d)
    if not Bpp.any():
        K, k = C, zmod.reduce(-Lp, d)
    else:
        try:
            Ainv = zmod.mat_inv(Bpp, d)
        except NotInvertible as exc:
            raise LegendreSingular("stationary momentum is not unique") from exc
        q4 = zmod.inv(4, d)
        quad = zmod.reduce(quad - q4 * zmod.matmul(C.T, Ainv, C, d=d), d)
        lin = zmod.reduce(lin - 2 * q4 * zmod.matmul(C.T, Ainv, Lp, d=d), d)
        K, k = np.zeros((0, 2 * n), dtype=np.int64), np.zeros(0, dtype=np.int64)
    Qsym = zmod.reduce(zmod.half(d) * (quad + quad.T), d)
    return PositionAction(Qsym, lin, K, k, d)
