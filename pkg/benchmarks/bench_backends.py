"""Benchmark the compiled kernels against the numpy fallback, and the
recursive matrix-product strategy against the naive one.

Run:  python benchmarks/bench_backends.py [--repeats N] [--sizes 256,512]

Nothing here is asserted; the numbers are informational.  The product
strategy comparison uses whichever kernel backend is active, so the
recursive-vs-naive ratio isolates the algorithm, not the backend.
"""

import argparse
import time

import numpy as np

from agkeq import backend
from agkeq.gf import Field
from agkeq.linalg import Matrix, matmul


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_workloads(field, rng):
    tab = field.tables()
    q = field.q

    def r(*shape):
        return rng.integers(0, q, shape, dtype=np.uint16)

    a, b = r(192, 192), r(192, 192)
    rr = r(160, 320)
    ca, cb = r(24, 64), r(24, 64)
    t3, ty = r(40, 128, 40), r(128)
    bp, by, bq = r(40, 256), r(256), r(40, 256)
    num, den = r(512, 64), r(512, 64)
    num_start = rng.integers(-4, 4, 512).astype(np.int64)

    return {
        "matmul": lambda k: k.matmul(a, b, tab),
        "rref": lambda k: k.rref(rr.copy(), tab),
        "batch_mul_trunc": lambda k: k.batch_mul_trunc(ca, cb, tab),
        "contract": lambda k: k.contract(t3, ty, tab),
        "bilinear": lambda k: k.bilinear(bp, by, bq, tab),
        "residue_quotient": lambda k: k.residue_quotient(num, den, num_start, 3, tab),
    }


def bench_kernels(field, repeats):
    rng = np.random.default_rng(0)
    workloads = kernel_workloads(field, rng)
    names = ["py", "c"] if backend.HAVE_C else ["py"]
    kernels = {n: backend.get(n) for n in names}
    print(f"kernel benchmark over F{field.q} (best of {repeats})")
    header = f"  {'kernel':<18}" + "".join(f"{n + ' (ms)':>12}" for n in names)
    if backend.HAVE_C:
        header += f"{'speedup':>10}"
    print(header)
    for wname, call in workloads.items():
        row = f"  {wname:<18}"
        times = {}
        for n in names:
            times[n] = best_of(lambda: call(kernels[n]), repeats)
            row += f"{times[n] * 1e3:>12.3f}"
        if backend.HAVE_C:
            row += f"{times['py'] / times['c']:>9.1f}x"
        print(row)


def bench_matmul_strategy(field, sizes, repeats):
    rng = np.random.default_rng(1)
    print(f"\nmatrix product strategy over F{field.q}, backend={backend.NAME} "
          f"(best of {repeats})")
    print(f"  {'n':>6}{'naive (s)':>12}{'recursive (s)':>15}{'ratio':>8}")
    for n in sizes:
        a = Matrix(field, rng.integers(0, field.q, (n, n), dtype=np.uint16))
        b = Matrix(field, rng.integers(0, field.q, (n, n), dtype=np.uint16))
        tn = best_of(lambda: matmul(a, b, strategy="naive"), repeats)
        ts = best_of(lambda: matmul(a, b, strategy="strassen"), repeats)
        print(f"  {n:>6}{tn:>12.3f}{ts:>15.3f}{tn / ts:>7.2f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--sizes", default="256,512",
                    help="comma-separated square sizes for the strategy benchmark")
    args = ap.parse_args()
    field = Field((2, 4, (1, 1, 0, 0, 1)))
    bench_kernels(field, args.repeats)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    bench_matmul_strategy(field, sizes, args.repeats)


if __name__ == "__main__":
    main()
