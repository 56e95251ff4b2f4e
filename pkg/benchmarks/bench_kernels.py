"""Compiled vs pure-Python kernels on the same instances.

    python3 benchmarks/bench_kernels.py [--instances 20] [--repeats 5]

Prints the median time per solve for each algorithm and backend, and the
speed-up of the compiled kernels. The exact search is timed on 8-VNF,
5-node micro-instances.
"""
from __future__ import annotations

import argparse
import statistics
import sys
import time
from pathlib import Path

from ranslice import kernels
from ranslice.flat import flatten
from ranslice.generator import GeneratorConfig, generate
from ranslice.harness import ALGORITHMS
from ranslice.oracle import OracleBudget, run_exact

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from _support import random_micro  # noqa: E402


def median_ms(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times) * 1e3


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args(argv)
    if "compiled" not in kernels.BACKENDS:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    backends = [kernels.BACKENDS["python"], kernels.BACKENDS["compiled"]]
    flats = [flatten(generate(GeneratorConfig(seed=s))) for s in range(args.instances)]
    micros = [flatten(random_micro(s, max_vnfs=8, max_nodes=5)) for s in range(args.instances)]

    def run(alg, be, flat):
        if alg == "exact":
            return lambda: run_exact(flat, OracleBudget(max_vnfs=8, max_nodes=5), be)
        return lambda: ALGORITHMS[alg](flat, be)

    print(f"{'algorithm':<10}{'python ms':>12}{'compiled ms':>14}{'speed-up':>10}")
    for alg in ("rba", "cba", "gcba", "gba", "exact"):
        pool = micros if alg == "exact" else flats
        ms = [statistics.median(median_ms(run(alg, be, f), args.repeats) for f in pool)
              for be in backends]
        print(f"{alg:<10}{ms[0]:>12.3f}{ms[1]:>14.3f}{ms[0] / ms[1]:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
