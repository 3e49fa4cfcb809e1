"""Timing comparison of the sweep backends.

Runs the same decomposition sweeps through the compiled kernel, the
pure-Python kernel, and the generic object-level path, and prints one
table row per (workload, backend) pair.  The kernels are loaded
explicitly through cleanforge._kernel.implementations(), so both are
timed even though only one is active for normal imports.

Usage: python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

from cleanforge import Mat, strongly_clean_decompose, verify_decomposition
from cleanforge._kernel import implementations
from cleanforge._kernel.tables import tables_for
from cleanforge.oracle import _iter_matrices
from cleanforge.rings import parse_ring_spec


WORKLOADS = [
    ("Z/4 2x2 exhaustive", "Z/4", 2, "exhaustive", 0, 0),
    ("Z/9 2x2 exhaustive", "Z/9", 2, "exhaustive", 0, 0),
    ("Z/8 3x3 sample 1000", "Z/8", 3, "sample", 1000, 42),
    ("F2[t]/t^2 2x2 exhaustive", "F2[t]/t^2", 2, "exhaustive", 0, 0),
]


def run_kernel(mod, spec, n, mode, count, seed):
    tabs = tables_for(spec)
    sample = 1 if mode == "sample" else 0
    checked, nfail, _ = mod.sweep_decompose(tabs, n, sample, count, seed, 0)
    if nfail:
        raise AssertionError("sweep reported failures")
    return checked


def run_generic(spec, n, mode, count, seed):
    checked = 0
    for a in _iter_matrices(spec, n, mode, count, seed):
        dec = strongly_clean_decompose(a)
        res = verify_decomposition(a, dec.E, dec.U)
        if not res.ok:
            raise AssertionError("generic path reported a failure")
        checked += 1
    return checked


def best_of(repeat, fn, *args):
    best = None
    checked = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        checked = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return checked, best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="take best of N runs")
    args = ap.parse_args()

    impls = implementations()
    header = f"{'workload':<26} {'backend':<14} {'matrices':>8} {'seconds':>10} {'per-matrix':>12}"
    print(header)
    print("-" * len(header))
    for label, ring, n, mode, count, seed in WORKLOADS:
        spec = parse_ring_spec(ring)
        rows = []
        for name, mod in sorted(impls.items()):
            checked, dt = best_of(args.repeat, run_kernel, mod, spec, n, mode, count, seed)
            rows.append((name, checked, dt))
        checked, dt = best_of(args.repeat, run_generic, spec, n, mode, count, seed)
        rows.append(("generic", checked, dt))
        for name, checked, dt in rows:
            per = dt / checked if checked else 0.0
            print(f"{label:<26} {name:<14} {checked:>8} {dt:>10.4f} {per * 1e6:>10.1f}us")
        print()


if __name__ == "__main__":
    main()
