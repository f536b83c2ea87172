"""Plain-text circuit format.

    # comment
    qudits 2 dim 5
    F 0
    C 0 1        # control, target
    Z 1 3        # target, power
    T 1
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dense import Gate
from .errors import BadDimension, BadTarget, ParseError
from .zmod import Dim

_ARITY = {"F": 1, "P": 1, "T": 1, "C": 2, "Z": 2, "X": 2}


@dataclass
class Circuit:
    dim: Dim
    gates: list = field(default_factory=list)

    @property
    def is_clifford(self) -> bool:
        return all(g.is_clifford for g in self.gates)


def _tokens(line: str):
    """(column, token) pairs, columns 1-based."""
    out, col = [], 0
    for tok in line.split():
        col = line.index(tok, col)
        out.append((col + 1, tok))
        col += len(tok)
    return out


def _int(tok, lineno, col, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", lineno, col) from None


def parse_circuit(text: str) -> Circuit:
    circuit = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        if circuit is None:
            words = [t for _, t in toks]
            if len(toks) != 4 or words[0] != "qudits" or words[2] != "dim":
                raise ParseError("expected header 'qudits <n> dim <d>'", lineno, toks[0][0])
            n = _int(words[1], lineno, toks[1][0], "qudit count")
            d = _int(words[3], lineno, toks[3][0], "dimension")
            if d < 3 or d % 2 == 0:
                raise BadDimension(f"dimension must be odd and >= 3, got {d}", lineno, toks[3][0])
            if n < 1:
                raise ParseError(f"qudit count must be positive, got {n}", lineno, toks[1][0])
            circuit = Circuit(Dim(d, n))
            continue
        (col, kind), args = toks[0], toks[1:]
        if kind not in _ARITY:
            raise ParseError(f"unknown gate {kind!r}", lineno, col)
        if len(args) != _ARITY[kind]:
            raise ParseError(f"{kind} takes {_ARITY[kind]} argument(s), got {len(args)}", lineno, col)
        n_targets = 2 if kind == "C" else 1
        targets = []
        for acol, tok in args[:n_targets]:
            t = _int(tok, lineno, acol, "target")
            if not 0 <= t < circuit.dim.n:
                raise BadTarget(f"target {t} out of range for {circuit.dim.n} qudit(s)", lineno, acol)
            targets.append(t)
        if len(set(targets)) != len(targets):
            raise BadTarget("control and target must differ", lineno, args[1][0])
        power = _int(args[1][1], lineno, args[1][0], "power") % circuit.dim.d if kind in "ZX" else 0
        circuit.gates.append(Gate(kind, tuple(targets), power))
    if circuit is None:
        raise ParseError("missing header 'qudits <n> dim <d>'", 1)
    return circuit


def format_circuit(circuit: Circuit) -> str:
    lines = [f"qudits {circuit.dim.n} dim {circuit.dim.d}"]
    for g in circuit.gates:
        args = list(g.targets) + ([g.power] if g.kind in ("Z", "X") else [])
        lines.append(" ".join([g.kind] + [str(a) for a in args]))
    return "\n".join(lines) + "\n"
