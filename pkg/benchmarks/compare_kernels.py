"""Compare the Cython kernel, the pure-Python kernel and the stack baseline.

    python3 benchmarks/compare_kernels.py [--sizes 10000,40000] [--repeats 3] [--out rows.csv]

Writes the bench CSV (one row per graph and algorithm) and prints a short
speedup table on stderr.
"""
import argparse
import sys

from eulerstream import KERNELS
from eulerstream.bench import bench, write_csv
from eulerstream.generators import GenSpec


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--sizes", default="10000,40000,160000")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--out", default="-")
    args = p.parse_args(argv)

    specs = []
    for m in map(int, args.sizes.split(",")):
        specs.append(GenSpec("cycle_union", {"n": 1000, "k": round(m / 10.5), "max_len": 20}, seed=m))
        specs.append(GenSpec("random_eulerian", {"n": 200, "target_m": m}, seed=m))
    algos = [f"space-{k}" for k in sorted(KERNELS)] + ["baseline"]
    if "cython" not in KERNELS:
        print("Cython extension not built; comparing Python kernel and baseline only", file=sys.stderr)
    rows = bench(specs, algos, args.repeats)

    if args.out == "-":
        write_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="ascii") as fh:
            write_csv(rows, fh)

    by_graph = {}
    for r in rows:
        by_graph.setdefault(r.graph_id, {})[r.algo] = r.elapsed_ns
    print(f"{'graph':50} {'algo':14} {'ms':>9} {'vs python':>9}", file=sys.stderr)
    for gid, times in by_graph.items():
        ref = times.get("space-python")
        for algo, ns in times.items():
            rel = f"{ref / ns:8.1f}x" if ref else ""
            print(f"{gid:50} {algo:14} {ns / 1e6:9.2f} {rel:>9}", file=sys.stderr)
    return 0 if all(r.verified for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
