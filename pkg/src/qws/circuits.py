"""Random circuit generators used by tests, the benchmark and the CLI verifier."""
from __future__ import annotations

import numpy as np

from .dense import Gate
from .zmod import Dim

CLIFFORD_KINDS = ("F", "P", "C", "Z", "X")


def random_gate(dim: Dim, rng: np.random.Generator, kinds=CLIFFORD_KINDS) -> Gate:
    kinds = [k for k in kinds if k != "C" or dim.n >= 2]
    kind = kinds[rng.integers(len(kinds))]
    if kind == "C":
        c, t = rng.choice(dim.n, size=2, replace=False)
        return Gate("C", (int(c), int(t)))
    target = (int(rng.integers(dim.n)),)
    if kind in ("Z", "X"):
        return Gate(kind, target, int(rng.integers(1, dim.d)))
    return Gate(kind, target)


def random_clifford_circuit(dim: Dim, length: int, rng: np.random.Generator) -> list[Gate]:
    return [random_gate(dim, rng) for _ in range(length)]


def random_circuit_with_t(dim: Dim, length: int, t_count: int, rng: np.random.Generator) -> list[Gate]:
    """Random Clifford circuit with ``t_count`` T gates inserted at random positions."""
    circuit = random_clifford_circuit(dim, length, rng)
    for _ in range(t_count):
        pos = int(rng.integers(len(circuit) + 1))
        circuit.insert(pos, Gate("T", (int(rng.integers(dim.n)),)))
    return circuit
