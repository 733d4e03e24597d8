"""Compare the compiled and pure-Python kernels on generated triangulations.

    python3 benchmarks/bench_kernels.py [--n 60] [--repeat 3]
"""

from __future__ import annotations

import argparse
import timeit

from cyclesep import kernels, oracle
from cyclesep.embedding import load_embedding
from cyclesep.generators import GeneratorConfig, gen


def workloads(n: int):
    doc = gen(GeneratorConfig(n=n, seed=1))
    e = load_embedding(doc)
    t = e.tables
    allowed = bytearray(b"\x01") * t.n
    cycle = next(iter(kernels.simple_cycles(t, 6, allowed, 10**6)))
    edge_mask, vertex_mask = bytearray(t.m), bytearray(t.n)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        edge_mask[t.edge_index[(min(a, b), max(a, b))]] = 1
        vertex_mask[a] = 1

    def crossing():
        oracle.find_crossing(e.coords, e.edges)

    return {
        "side_labels x200": lambda: [kernels.side_labels(t, edge_mask, vertex_mask) for _ in range(200)],
        "simple_cycles len<=7": lambda: kernels.simple_cycles(t, 7, allowed, 10**7),
        "jordan_census len<=6": lambda: kernels.jordan_census(t, 6, 10**7),
        "find_crossing": crossing,
    }


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        kernels.use("cython")
    except ImportError:
        print("compiled kernels not built; only the Python backend is available")
        return
    jobs = workloads(args.n)
    print(f"{'kernel':24s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, fn in jobs.items():
        row = {}
        for backend in ("cython", "python"):
            kernels.use(backend)
            row[backend] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        print(f"{name:24s} {row['cython']:10.4f} {row['python']:10.4f} {row['python'] / row['cython']:7.1f}x")
    kernels.use("cython")


if __name__ == "__main__":
    main()
