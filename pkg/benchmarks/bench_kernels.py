"""Benchmark the numba Gram-Schmidt kernel against the pure-numpy fallback.

The two-pass orthonormalization runs inside every span() and every closure
round of generated algebras; this script times both backends on workloads
shaped like the real ones (stacks of flattened matrices, heavy linear
dependence).  Run:

    python benchmarks/bench_kernels.py

NCCHECK_NUMBA=0 only affects the dispatcher; this script always times both
implementations directly when numba is importable.
"""

import time

import numpy as np

from nccheck import _kernels


def workload(rng, m, d, rank):
    base = rng.standard_normal((rank, d)) + 1j * rng.standard_normal((rank, d))
    coeff = rng.standard_normal((m, rank)) + 1j * rng.standard_normal((m, rank))
    vecs = coeff @ base
    noise = 1e-13 * (rng.standard_normal((m, d)) + 1j * rng.standard_normal((m, d)))
    return np.ascontiguousarray(vecs + noise)


def timeit(fn, vecs, repeats=5):
    against = np.zeros((0, vecs.shape[1]), dtype=np.complex128)
    best = np.inf
    out = None
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn(vecs.copy(), against, 1e-9)
        best = min(best, time.perf_counter() - start)
    return best, out.shape[0]


def main():
    rng = np.random.default_rng(0)
    cases = [
        ("closure round, 16-dim H", 300, 256, 64),
        ("closure round, 32-dim H", 300, 1024, 128),
        ("gct trial batch", 600, 256, 200),
        ("torus-sized span", 200, 784, 150),
    ]
    if not _kernels.USING_NUMBA:
        print("numba backend unavailable or disabled; timing numpy only")
    header = f"{'case':26s} {'rows x dim':>12s} {'rank':>5s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, m, d, rank in cases:
        vecs = workload(rng, m, d, rank)
        t_np, k_np = timeit(_kernels._orthonormalize_numpy, vecs)
        if _kernels.USING_NUMBA:
            _kernels._orthonormalize_numba(vecs[:4].copy(), vecs[:0], 1e-9)  # warm the JIT
            t_nb, k_nb = timeit(_kernels._orthonormalize_numba, vecs)
            assert k_np == k_nb, "backends disagree on rank"
            print(f"{name:26s} {m:5d} x {d:5d} {k_np:5d} {t_np*1e3:9.2f}ms {t_nb*1e3:9.2f}ms {t_np/t_nb:7.2f}x")
        else:
            print(f"{name:26s} {m:5d} x {d:5d} {k_np:5d} {t_np*1e3:9.2f}ms {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
