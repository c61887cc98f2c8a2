"""Timing comparison of the two kernel backends.

Runs the hot kernels through both implementations on identical inputs and
prints a small table.  The compiled extension is optional; without it the
script reports the pure-numpy numbers alone.

Usage: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from xxzgeom import _kernels_py

try:
    from xxzgeom import _kernels
except ImportError:
    _kernels = None


def median_time(fn, repeats=7):
    fn()  # warm up
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    times.sort()
    return times[len(times) // 2]


def hermitian_stack(rng, m, n):
    a = rng.standard_normal((m, n, n)) + 1j * rng.standard_normal((m, n, n))
    return 0.5 * (a + np.conj(np.swapaxes(a, 1, 2)))


def main():
    rng = np.random.default_rng(0)
    stack = hermitian_stack(rng, 2000, 4)
    single = stack[0]
    h = stack[1]
    d0 = stack[2] @ stack[2].conj().T
    d0 = d0 / np.trace(d0).real

    cases = [
        (
            "eigh_small x 1000",
            lambda k: [k.eigh_small(single) for _ in range(1000)],
        ),
        (
            "eigh_many 2000x4x4",
            lambda k: k.eigh_many(stack),
        ),
        (
            "eigh_many values only",
            lambda k: k.eigh_many(stack, vectors=False),
        ),
        (
            "rk4_milburn 20000 steps",
            lambda k: k.rk4_milburn(h, 0.05, d0, 10.0, 20000, 100),
        ),
    ]

    width = max(len(name) for name, _ in cases)
    header = f"{'kernel':<{width}}  {'python':>10}"
    if _kernels is not None:
        header += f"  {'compiled':>10}  {'speedup':>8}"
    print(header)
    for name, call in cases:
        t_py = median_time(lambda: call(_kernels_py))
        line = f"{name:<{width}}  {t_py * 1e3:>8.2f}ms"
        if _kernels is not None:
            t_c = median_time(lambda: call(_kernels))
            line += f"  {t_c * 1e3:>8.2f}ms  {t_py / t_c:>7.1f}x"
        print(line)
    if _kernels is None:
        print("compiled extension not built; python numbers only")


if __name__ == "__main__":
    main()
