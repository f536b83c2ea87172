"""Time the three backends on random circuits.

    python3 benchmarks/bench_backends.py --d 5 --n 2 --lengths 10 20 40 80
"""
import argparse
import time

import numpy as np

from qws import pathint, stabilizer, weyl
from qws.circuits import random_circuit_with_t, random_clifford_circuit
from qws.dense import basis_state, run
from qws.zmod import Dim


def _time(fn, repeat):
    start = time.perf_counter()
    for _ in range(repeat):
        fn()
    return 1e3 * (time.perf_counter() - start) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=5)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--lengths", type=int, nargs="+", default=[10, 20, 40, 80, 160])
    ap.add_argument("--t-count", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    dim = Dim(args.d, args.n)
    rng = np.random.default_rng(args.seed)
    zero = basis_state((0,) * dim.n, dim)
    print(f"d={dim.d} n={dim.n}, times in ms per circuit (state propagation only)")
    print(f"{'length':>7} {'stabilizer':>11} {'dense':>9} {'reflection':>11}")
    for length in args.lengths:
        cliff = random_clifford_circuit(dim, length, rng)
        with_t = random_circuit_with_t(dim, length, args.t_count, rng)
        t_stab = _time(lambda: stabilizer.simulate(cliff, dim), args.repeat)
        t_dense = _time(lambda: run(with_t, zero), args.repeat)
        t_refl = _time(lambda: pathint.run_reflection(with_t, zero), args.repeat)
        print(f"{length:>7} {t_stab:>11.2f} {t_dense:>9.2f} {t_refl:>11.2f}")
    t_w = _time(lambda: weyl.wigner_pure(zero), args.repeat)
    print(f"wigner_pure on d^n = {dim.hilbert}: {t_w:.2f} ms")


if __name__ == "__main__":
    main()
