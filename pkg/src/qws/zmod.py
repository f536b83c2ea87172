"""Exact arithmetic and linear algebra over Z_d for odd d.

Vectors and matrices are plain ``numpy`` integer arrays whose entries are
kept reduced to ``[0, d)``.  Phase-space vectors are ordered ``(p_0, ...,
p_{n-1}, q_0, ..., q_{n-1})``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotInvertible, ShapeMismatch, SizeLimitExceeded

#: default bound on the number of phase-space points enumerated by solve_affine
DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class Dim:
    """Local dimension ``d`` (odd, >= 3) and number of qudits ``n``."""

    d: int
    n: int = 1

    def __post_init__(self):
        if not isinstance(self.d, (int, np.integer)) or self.d < 3 or self.d % 2 == 0:
            raise ValueError(f"d must be an odd integer >= 3, got {self.d!r}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")

    @property
    def hilbert(self) -> int:
        return self.d**self.n

    @property
    def points(self) -> int:
        """Number of phase-space points, d^(2n)."""
        return self.d ** (2 * self.n)

    @property
    def omega(self) -> complex:
        return np.exp(2j * np.pi / self.d)


def reduce(a, d: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), d)


def inv(a: int, d: int) -> int:
    """Multiplicative inverse of ``a`` modulo ``d``."""
    a = int(a) % d
    if math.gcd(a, d) != 1:
        raise NotInvertible(f"{a} has no inverse modulo {d}")
    return pow(a, -1, d)


def half(d: int) -> int:
    """inv(2) mod d, equal to (d+1)/2 for odd d."""
    return (d + 1) // 2


def matmul(*mats, d: int) -> np.ndarray:
    out = reduce(mats[0], d)
    for m in mats[1:]:
        out = np.mod(out @ reduce(m, d), d)
    return out


def identity(size: int) -> np.ndarray:
    return np.eye(size, dtype=np.int64)


def mat_inv(M, d: int) -> np.ndarray:
    """Inverse of a square matrix over Z_d.

    Works for composite ``d``: pivots are produced by Euclidean row
    operations, so no unit entry needs to exist in a column beforehand.
    """
    M = reduce(M, d)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeMismatch(f"mat_inv needs a square matrix, got shape {M.shape}")
    size = M.shape[0]
    aug = np.concatenate([M, identity(size)], axis=1)
    for k in range(size):
        while True:
            nonzero = [i for i in range(k, size) if aug[i, k] != 0]
            if not nonzero:
                raise NotInvertible("matrix is singular modulo %d" % d)
            piv = min(nonzero, key=lambda i: aug[i, k])
            others = [i for i in nonzero if i != piv]
            if not others:
                break
            for i in others:
                aug[i] = np.mod(aug[i] - (aug[i, k] // aug[piv, k]) * aug[piv], d)
        aug[[k, piv]] = aug[[piv, k]]
        g = int(aug[k, k])
        if math.gcd(g, d) != 1:
            raise NotInvertible("determinant is not a unit modulo %d" % d)
        aug[k] = np.mod(aug[k] * inv(g, d), d)
        for i in range(size):
            if i != k and aug[i, k]:
                aug[i] = np.mod(aug[i] - aug[i, k] * aug[k], d)
    return aug[:, size:]


def symplectic_form(n: int, d: int | None = None) -> np.ndarray:
    """J = [[0, -I], [I, 0]]; reduced mod d when ``d`` is given."""
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    J[:n, n:] = -identity(n)
    J[n:, :n] = identity(n)
    return J if d is None else reduce(J, d)


def is_symplectic(M, d: int) -> bool:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        raise ShapeMismatch(f"expected a 2n x 2n matrix, got shape {M.shape}")
    J = symplectic_form(M.shape[0] // 2, d)
    return bool(np.array_equal(matmul(M.T, J, M, d=d), J))


def symplectic_inverse(M, d: int) -> np.ndarray:
    """M^{-1} = -J M^T J for symplectic M (no elimination needed)."""
    J = symplectic_form(np.asarray(M).shape[0] // 2, d)
    return reduce(-matmul(J, np.asarray(M).T, J, d=d), d)


def symmetric_lift(a, d: int) -> np.ndarray:
    """Integer representatives in (-d/2, d/2]."""
    a = reduce(a, d)
    return np.where(a > d // 2, a - d, a)


def phase_space_points(n: int, d: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All points of (Z_d)^(2n) in row-major order (first coordinate slowest)."""
    total = d ** (2 * n)
    if total > cap:
        raise SizeLimitExceeded(f"d^(2n) = {total} exceeds enumeration cap {cap}")
    return np.array(list(itertools.product(range(d), repeat=2 * n)), dtype=np.int64).reshape(total, 2 * n)


def solve_affine(Phi, r, d: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All x in (Z_d)^(2n) with Phi x = r, by enumeration.

    Returns an array of shape (k, 2n) with solutions in lexicographic order.
    """
    Phi = reduce(Phi, d)
    r = reduce(r, d)
    if Phi.ndim != 2 or Phi.shape[1] % 2 or r.shape != (Phi.shape[0],):
        raise ShapeMismatch(f"incompatible shapes {Phi.shape} and {r.shape}")
    pts = phase_space_points(Phi.shape[1] // 2, d, cap)
    ok = np.all(np.mod(pts @ Phi.T, d) == r, axis=1)
    return pts[ok]
