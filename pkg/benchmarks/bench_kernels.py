"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--n 400] [--terminals 10] [--repeat 3]
"""
import argparse
import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from conftest import random_connected_graph  # noqa: E402
from dynst import _pykernels  # noqa: E402
from dynst.graph import metric_closure  # noqa: E402

try:
    from dynst import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=400)
    p.add_argument("--terminals", type=int, default=10)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; run pip install -e . --no-build-isolation")
        return 1

    g = random_connected_graph(args.n, 4 * args.n, seed=args.seed)
    indptr, indices, weights = g.csr
    sources = list(range(0, args.n, max(1, args.n // 50)))
    closure = metric_closure(g)
    terms = random.Random(args.seed).sample(range(args.n), args.terminals)

    cases = [
        (f"dijkstra x{len(sources)} (n={args.n}, m={g.m})",
         lambda k: np.array([k.dijkstra(indptr, indices, weights, s) for s in sources])),
        (f"dreyfus_wagner (n={args.n}, k={args.terminals})",
         lambda k: k.dreyfus_wagner(closure, terms)),
    ]
    print(f"{'kernel':44s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, run in cases:
        tp, a = best_of(lambda: run(_pykernels), args.repeat)
        tc, b = best_of(lambda: run(_ckernels), args.repeat)
        if not np.allclose(a, b):
            print(f"{name}: results differ")
            return 1
        print(f"{name:44s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
