#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure Python fallback.

Times the two hot kernels (label-vector evaluation and one ant traversal)
on a benchmark-shaped instance for both backends, checks they return the
same results, and reports the speedup.

Usage:
    python benchmarks/kernel_bench.py [--profile RGD4296] [--repeats 50]
"""

import argparse
import random
import statistics
import time

from srg._kernels import get_backend
from srg.constructive import hfo_solve
from srg.model import ColumnLimits
from srg.profiles import profile_by_name, synthesize


def time_calls(fn, repeats):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--profile", default="RGD4296", help="benchmark shape to synthesize")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()

    instance = synthesize(profile_by_name(args.profile), seed=args.seed)
    packed = instance.packed()
    limits = ColumnLimits()
    m = instance.num_students
    slots = hfo_solve(instance).group_count
    print(f"instance {instance.name}: {m} students, "
          f"{len(instance.courses)} courses, {slots} greedy groups\n")

    rng = random.Random(args.seed)
    labels = [rng.randrange(m) for _ in range(m)]
    trails = [[rng.uniform(0.1, 10.0) for _ in range(m)] for _ in range(slots)]
    import numpy as np

    trails = np.array(trails)
    eta = [1.0] * m
    uniforms = [rng.random() for _ in range(m)]

    backends = {}
    for name in ("fallback", "native"):
        try:
            backends[name] = get_backend(name)
        except ValueError:
            print(f"{name}: not available, skipping")

    rows = []
    results = {}
    for name, backend in backends.items():
        evaluate_t = time_calls(
            lambda: backend.evaluate_labels(packed, labels, 13, 13, 26, False), args.repeats
        )
        traverse_t = time_calls(
            lambda: backend.ant_traverse(packed, trails, eta, 1.0, 13, 13, 26, False, uniforms),
            max(3, args.repeats // 10),
        )
        results[name] = (
            backend.evaluate_labels(packed, labels, 13, 13, 26, False),
            backend.ant_traverse(packed, trails, eta, 1.0, 13, 13, 26, False, uniforms),
        )
        rows.append((name, evaluate_t, traverse_t))

    if len(results) == 2:
        assert results["fallback"] == results["native"], "backends disagree!"

    print(f"{'backend':<10} {'evaluate_labels':>18} {'ant_traverse':>16}")
    for name, evaluate_t, traverse_t in rows:
        print(f"{name:<10} {evaluate_t * 1e6:>15.1f} us {traverse_t * 1e3:>13.2f} ms")
    if len(rows) == 2:
        base = {name: (e, t) for name, e, t in rows}
        print(f"\nspeedup: evaluate x{base['fallback'][0] / base['native'][0]:.0f}, "
              f"traverse x{base['fallback'][1] / base['native'][1]:.0f}")
        print("results identical across backends: yes")


if __name__ == "__main__":
    main()
