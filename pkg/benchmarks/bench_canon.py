"""Compare the compiled canonical-labelling kernel with the pure-Python one.

    python benchmarks/bench_canon.py [--repeat 3] [--max-order 8]
"""

import argparse
import time

import numpy as np

from starspec import _canon, _kernels
from starspec import graphcore as gc


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def random_rows(rng, n, count):
    out = []
    for _ in range(count):
        upper = np.triu(rng.random((n, n)) < 0.5, 1)
        out.append(gc.Graph.from_matrix(upper | upper.T).rows)
    return out


def run_with(backend, fn):
    saved = _kernels._ext
    if backend == "python":
        _kernels._ext = None
    try:
        return fn()
    finally:
        _kernels._ext = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-order", type=int, default=8)
    args = ap.parse_args()
    if _kernels._ext is None:
        print("compiled kernel not available; only the pure-Python timings are meaningful")
    backends = ["compiled", "python"] if _kernels._ext is not None else ["python"]
    rng = np.random.default_rng(0)

    print(f"{'task':<28}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in (8, 12, 20, 32):
        batch = random_rows(rng, n, 200)

        def labels():
            for rows in batch:
                _kernels.canonical_labelling(rows)

        ts = [run_with(b, lambda: best_of(labels, args.repeat)) for b in backends]
        # sanity: both kernels agree
        if len(backends) == 2:
            for rows in batch[:20]:
                assert _kernels._ext.canonical_labelling(rows, None) == _canon.canonical_labelling(rows, None)
        row = f"{'label 200 graphs n=' + str(n):<28}" + "".join(f"{t:>11.3f}s" for t in ts)
        print(row + (f"{ts[1] / ts[0]:>9.1f}x" if len(ts) == 2 else ""))

    for n in range(6, args.max_order + 1):
        ts = [run_with(b, lambda: best_of(lambda: sum(1 for _ in gc.enumerate_nonisomorphic(n)), 1))
              for b in backends]
        row = f"{'enumerate n=' + str(n):<28}" + "".join(f"{t:>11.3f}s" for t in ts)
        print(row + (f"{ts[1] / ts[0]:>9.1f}x" if len(ts) == 2 else ""))


if __name__ == "__main__":
    main()
