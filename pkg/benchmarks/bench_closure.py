"""Benchmark the bracket-closure oracle on the numba and numpy kernels.

Reports closures/sec per backend for random generic systems, after one
warm-up call so numba compilation is excluded.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from suncontrol import kernels
from suncontrol.generators import generic, system_rngs
from suncontrol.oracle import lie_closure


def run(backend: str, systems, repeats: int) -> float:
    lie_closure(systems[0], backend=backend)
    start = time.perf_counter()
    for _ in range(repeats):
        for s in systems:
            lie_closure(s, backend=backend)
    elapsed = max(1e-9, time.perf_counter() - start)
    return repeats * len(systems) / elapsed


def main() -> None:
    parser = argparse.ArgumentParser(description="Benchmark Lie-closure kernels")
    parser.add_argument("--levels", type=int, nargs="+", default=[3, 4, 6, 8])
    parser.add_argument("--systems", type=int, default=50)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if kernels.NUMBA_AVAILABLE else [])
    print("bench_closure")
    print(f"systems={args.systems} repeats={args.repeats} backends={','.join(backends)}")
    for n in args.levels:
        systems = [generic(n, rng) for rng in system_rngs(n, args.systems)]
        dims = {b: [lie_closure(s, backend=b).dimension for s in systems] for b in backends}
        agree = all(np.array_equal(dims[backends[0]], dims[b]) for b in backends)
        rates = {b: run(b, systems, args.repeats) for b in backends}
        line = " ".join(f"{b}={rates[b]:.1f}/s" for b in backends)
        if "numba" in rates:
            line += f" speedup={rates['numba'] / rates['numpy']:.2f}x"
        print(f"N={n} {line} dims_agree={agree}")


if __name__ == "__main__":
    main()
