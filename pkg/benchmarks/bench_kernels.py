"""Compare the compiled enumeration kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--full]

Both backends run the same subtree workloads (identical counts and node
accounting); the table reports wall time and throughput.
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from slcount import _kernels_py  # noqa: E402
from slcount.lattice import canonical_first_rows  # noqa: E402

try:
    from slcount import _kernels
except ImportError:
    _kernels = None


def run_backend(backend, kernel_name, limit, row_cap):
    kernel = getattr(backend, kernel_name)
    count = nodes = 0
    t0 = time.perf_counter()
    for row, weight in canonical_first_rows(3, row_cap):
        c, nd, done = kernel(row, limit, 10**15)
        assert done
        count += weight * c
        nodes += nd
    dt = time.perf_counter() - t0
    return count, nodes, dt


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true", help="larger radii (slower)")
    args = ap.parse_args()

    if args.full:
        workloads = [
            ("standard, T^2=400", "count_subtree_std3", 400, 400 - 2),
            ("adjoint,  T^2=900", "count_subtree_adj3", 901, 901 // 3 - 2),
        ]
    else:
        workloads = [
            ("standard, T^2=225", "count_subtree_std3", 225, 225 - 2),
            ("adjoint,  T^2=300", "count_subtree_adj3", 301, 301 // 3 - 2),
        ]

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("compiled extension not built; benchmarking the fallback only\n")

    header = f"{'workload':<20} {'backend':<8} {'count':>14} {'nodes':>12} {'seconds':>9} {'Mnodes/s':>9}"
    print(header)
    print("-" * len(header))
    for label, kernel_name, limit, row_cap in workloads:
        base_dt = None
        for name, backend in backends:
            count, nodes, dt = run_backend(backend, kernel_name, limit, row_cap)
            rate = nodes / dt / 1e6 if dt > 0 else float("inf")
            line = f"{label:<20} {name:<8} {count:>14} {nodes:>12} {dt:>9.3f} {rate:>9.2f}"
            if base_dt is None:
                base_dt = dt
            else:
                line += f"   ({base_dt / dt:.0f}x speedup)"
            print(line)
        print()


if __name__ == "__main__":
    main()
