"""Order-hbar^1 backend: gates as finite sums of reflections.

Any gate on k qudits equals sum_x w_x R(x) with w the center table of the
gate, i.e. d^(2k) reflection terms.  Clifford gates need only a single
classical path per phase-space point; the T-gate needs the whole sum.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import dense, weyl, zmod
from .dense import DenseOperator, DenseState, Gate
from .errors import SizeLimitExceeded
from .harmonic import catalog
from .zmod import Dim

DEFAULT_MAX_PATHS = 10**5
COUNTING_RULE = "product over hbar^1 gates of d^(2k), k = qudits the gate acts on"


@dataclass
class PathCounter:
    """Number of reflection terms (or single Clifford paths) visited."""

    visits: int = 0


@dataclass(frozen=True, eq=False)
class ReflectionExpansion:
    centers: np.ndarray  # (d^(2k), 2k) local phase-space points
    weights: np.ndarray  # complex, one per center
    targets: tuple
    dim: Dim  # dimension of the full register

    @property
    def local_dim(self) -> Dim:
        return Dim(self.dim.d, len(self.targets))

    def __len__(self) -> int:
        return len(self.weights)

    def terms(self):
        return zip(self.centers, self.weights)

    def reconstruct(self) -> DenseOperator:
        """sum_x w_x R(x) on the gate's own qudits, term by term."""
        ld = self.local_dim
        out = np.zeros((ld.hilbert, ld.hilbert), dtype=complex)
        for x, w in self.terms():
            out += w * weyl.reflection_op(x, ld).matrix
        return DenseOperator(out, ld)


def reflection_expansion(gate: Gate, dim: Dim, modular_t: bool = False) -> ReflectionExpansion:
    gate.check(dim)
    ld = Dim(dim.d, len(gate.targets))
    U = DenseOperator(dense.local_matrix(gate, dim.d, modular_t), ld)
    weights = weyl.center_repr(U).flat().copy()
    centers = zmod.phase_space_points(ld.n, dim.d)
    return ReflectionExpansion(centers, weights, gate.targets, dim)


def _apply_term(x, w, e: ReflectionExpansion, amp: np.ndarray) -> np.ndarray:
    R = weyl.reflection_op(x, e.local_dim).matrix
    return w * dense.apply_local(R, amp, e.targets, e.dim.d)


def apply_reflection_sum(e: ReflectionExpansion, psi: DenseState, counter: PathCounter | None = None) -> DenseState:
    """sum_x w_x R(x) psi, visiting every term."""
    amp = psi.tensor()
    out = np.zeros_like(amp)
    for x, w in e.terms():
        out = out + _apply_term(x, w, e, amp)
        if counter is not None:
            counter.visits += 1
    return DenseState(out, psi.dim)


def run_reflection(
    circuit: Sequence[Gate],
    psi: DenseState,
    counter: PathCounter | None = None,
    expand_clifford: bool = False,
) -> DenseState:
    """Gate-by-gate simulation; Clifford gates count as one path unless expanded."""
    for g in circuit:
        if g.is_clifford and not expand_clifford:
            psi = dense.apply_gate(g, psi)
            if counter is not None:
                counter.visits += 1
        else:
            psi = apply_reflection_sum(reflection_expansion(g, psi.dim), psi, counter)
    return psi


def path_sum(
    circuit: Sequence[Gate],
    psi: DenseState,
    counter: PathCounter | None = None,
    max_paths: int = DEFAULT_MAX_PATHS,
) -> DenseState:
    """Sum over every path: one reflection term chosen per non-Clifford gate.

    The number of paths is the product of the expansion sizes, which is what
    hbar_report predicts; this is exponential in the number of T gates.
    """
    expansions = {i: reflection_expansion(g, psi.dim) for i, g in enumerate(circuit) if not g.is_clifford}
    total = int(np.prod([len(e) for e in expansions.values()], dtype=object)) if expansions else 1
    if total > max_paths:
        raise SizeLimitExceeded(f"{total} paths exceed the limit of {max_paths}")
    order = sorted(expansions)
    out = np.zeros_like(psi.tensor())
    for choice in itertools.product(*(range(len(expansions[i])) for i in order)):
        pick = dict(zip(order, choice))
        amp = psi.tensor()
        for i, g in enumerate(circuit):
            if i in pick:
                e = expansions[i]
                amp = _apply_term(e.centers[pick[i]], e.weights[pick[i]], e, amp)
            else:
                amp = dense.apply_gate(g, DenseState(amp, psi.dim)).tensor()
        out = out + amp
        if counter is not None:
            counter.visits += 1
    return DenseState(out, psi.dim)


@dataclass
class PathCountReport:
    d: int
    n: int
    gates: list = field(default_factory=list)  # dicts with kind, targets, order, terms
    total_terms: int = 1

    def to_json(self) -> dict:
        return {
            "gates": [{"kind": g["kind"], "order": g["order"], "terms": g["terms"]} for g in self.gates],
            "total_terms": self.total_terms,
            "counting": COUNTING_RULE,
        }


def hbar_report(circuit: Sequence[Gate], dim: Dim) -> PathCountReport:
    report = PathCountReport(dim.d, dim.n)
    for g in circuit:
        order = catalog(g, dim).hbar_order
        terms = dim.d ** (2 * len(g.targets)) if order == 1 else 1
        report.gates.append({"kind": g.kind, "targets": list(g.targets), "order": order, "terms": terms})
        report.total_terms *= terms
    return report
