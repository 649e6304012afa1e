"""Compiled vs pure-Python kernels on a fixed seeded workload.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import statistics
import time

from kpfree import _pykernels
from kpfree.generators import h0_pendant, random_gnp, strong_product, cycle, complete
from kpfree.oracle import search_order

try:
    from kpfree import _ckernels
except ImportError:
    _ckernels = None


def workload():
    graphs = [random_gnp(n, d, seed) for n, d, seed in ((20, 0.25, 1), (26, 0.5, 2), (48, 0.4, 3))]
    c5k2 = strong_product(cycle(5), complete(2))
    h0 = h0_pendant()
    return [
        ("count K5, G(48, .4)", "count_cliques", (list(graphs[2].masks), graphs[2].full_mask, 5)),
        ("max K3-free, G(26, .5)", "max_kpfree", (list(graphs[1].masks), 3, 1, 0)),
        ("max K4-free, G(26, .5)", "max_kpfree", (list(graphs[1].masks), 4, 1, 0)),
        ("max K4-free, C5xK2", "max_kpfree", (list(c5k2.masks), 4, 64, 0)),
        ("alpha, H0", "max_kpfree", (list(h0.masks), 2, 2, 0)),
        ("partition [3,2,2], C5xK2", "search_partition",
         (list(c5k2.masks), search_order(c5k2), [3, 2, 2], 0)),
        ("partition [3,3], G(20, .25)", "search_partition",
         (list(graphs[0].masks), search_order(graphs[0]), [3, 3], 0)),
    ]


def timed(fn, args, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        runs.append(time.perf_counter() - t)
    return statistics.median(runs), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only timing the Python backend")
    print(f"{'case':32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn, fargs in workload():
        py_t, py_out = timed(getattr(_pykernels, fn), fargs, args.repeat)
        if _ckernels is None:
            print(f"{name:32} {py_t:10.4f}")
            continue
        c_t, c_out = timed(getattr(_ckernels, fn), fargs, args.repeat)
        if py_out != c_out:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:32} {py_t:10.4f} {c_t:10.4f} {py_t / max(c_t, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
