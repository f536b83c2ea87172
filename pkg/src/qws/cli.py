"""Command-line entry point: ``qws CIRCUIT [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import dense, pathint, stabilizer, weyl
from .dsl import Circuit, parse_circuit
from .errors import BackendRefused, NoGaussianForm, QwsError, SizeLimitExceeded
from .zmod import DEFAULT_CAP

log = logging.getLogger("qws")

BACKENDS = ("stabilizer", "dense", "reflection")
REPORTS = ("wigner", "support", "hbar", "gaussian")
EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


@dataclass
class RunConfig:
    backend: str = "dense"
    report: str = "wigner"
    verify: bool = False
    cap: int = DEFAULT_CAP
    tol: float = 1e-9


@dataclass
class RunResult:
    output: str
    exit_code: int = EXIT_OK
    message: str = ""


def _simulate(backend: str, circuit: Circuit, cap: int):
    """Return (Wigner table, state vector or None, stabilizer state or None)."""
    dim = circuit.dim
    if backend == "stabilizer":
        if not circuit.is_clifford:
            raise BackendRefused(
                "the stabilizer backend handles Clifford gates only (order hbar^0); "
                "T gates need order hbar^1 resources, use --backend reflection or dense"
            )
        s = stabilizer.simulate(circuit.gates, dim)
        return stabilizer.wigner_table(s, cap), None, s
    psi0 = dense.basis_state((0,) * dim.n, dim)
    if backend == "dense":
        psi = dense.run(circuit.gates, psi0)
    else:
        psi = pathint.run_reflection(circuit.gates, psi0)
    return weyl.wigner_pure(psi), psi, None


def _reference_backend(cfg: RunConfig, circuit: Circuit) -> str:
    if cfg.backend != "dense":
        return "dense"
    return "stabilizer" if circuit.is_clifford else "reflection"


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def run(cfg: RunConfig, circuit: Circuit) -> RunResult:
    dim = circuit.dim
    if cfg.report == "hbar":
        out = _json(pathint.hbar_report(circuit.gates, dim).to_json())
        return RunResult(out)
    if dim.points > cfg.cap:
        raise SizeLimitExceeded(f"d^(2n) = {dim.points} exceeds the enumeration cap {cfg.cap}")

    table, psi, stab = _simulate(cfg.backend, circuit, cfg.cap)
    result = RunResult("")
    if cfg.verify:
        other = _reference_backend(cfg, circuit)
        ref, _, _ = _simulate(other, circuit, cfg.cap)
        err = float(np.abs(table.values - ref.values).max())
        log.info("verify %s vs %s: max |dW| = %.3g", cfg.backend, other, err)
        if err > cfg.tol:
            result.exit_code = EXIT_MISMATCH
            result.message = f"verify failed: {cfg.backend} vs {other} differ by {err:.3g} > {cfg.tol:g}"
        else:
            result.message = f"verify ok: {cfg.backend} vs {other}, max difference {err:.3g}"

    if cfg.report == "wigner":
        result.output = table.to_csv()
    elif cfg.report == "support":
        body = {"d": dim.d, "n": dim.n, **stabilizer.support_from_wigner(table).to_json()}
        result.output = _json(body)
    else:
        if stab is None and circuit.is_clifford:
            stab = stabilizer.simulate(circuit.gates, dim)
        if psi is None:
            psi = stabilizer.to_dense(stab, cfg.cap)
        try:
            form = stabilizer.mixed_representation_search(psi).to_json()
        except NoGaussianForm:
            form = None
        body = {
            "d": dim.d,
            "n": dim.n,
            "Phi": None if stab is None else stab.Phi.tolist(),
            "r": None if stab is None else stab.r.tolist(),
            "class": stabilizer.support_from_wigner(table).overall,
            "gaussian_form": form,
        }
        result.output = _json(body)
    return result


def _limit_threads():
    threads = os.environ.get("QWS_THREADS")
    if not threads:
        return None
    from threadpoolctl import threadpool_limits

    return threadpool_limits(limits=int(threads))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qws", description="Odd-dimension qudit phase-space circuit simulator.")
    p.add_argument("circuit", help="circuit file ('-' reads stdin)")
    p.add_argument("--backend", choices=BACKENDS, default="dense", help="simulation backend (default: dense)")
    p.add_argument("--report", choices=REPORTS, default="wigner", help="what to emit (default: wigner CSV)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--verify", action="store_true", help="cross-check against a second backend")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum d^(2n) to enumerate")
    p.add_argument("--tol", type=float, default=1e-9, help="verify tolerance on Wigner values")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    limiter = _limit_threads()
    try:
        text = sys.stdin.read() if args.circuit == "-" else open(args.circuit, encoding="utf-8").read()
        circuit = parse_circuit(text)
        cfg = RunConfig(args.backend, args.report, args.verify, args.cap, args.tol)
        result = run(cfg, circuit)
    except (QwsError, OSError) as exc:
        print(f"qws: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        if limiter is not None:
            limiter.unregister()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(result.output)
    else:
        sys.stdout.write(result.output)
    if result.message:
        print(result.message, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
