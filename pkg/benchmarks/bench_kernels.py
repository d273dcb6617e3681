"""Benchmark the compiled kernel extension against the NumPy fallback.

Times the weighted kernel sum on representative solver workloads (one call
per evaluation point and rotation index) and an end-to-end interior solve.
Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from polyball import _kernels_py

try:
    from polyball import _kernels_c
except ImportError:
    _kernels_c = None


def time_call(func, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - started)
    return best


def bench_kernel_sums():
    rng = np.random.default_rng(0)
    cases = [
        ("n=2, m=256 circle", 256, 2, 2),
        ("n=2, m=4096 circle", 4096, 2, 2),
        ("n=3, m=2048 sphere", 2048, 3, 3),
        ("n=3, m=32768 sphere", 32768, 3, 3),
        ("n=5, m=8192 sphere", 8192, 5, 5),
    ]
    print(f"{'workload':26} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for label, m, n, npow in cases:
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        z *= 0.7 / np.linalg.norm(z)
        nodes = rng.standard_normal((m, n))
        nodes /= np.linalg.norm(nodes, axis=1)[:, None]
        wf = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        calls = max(1, 200_000 // m)

        def run_python():
            for _ in range(calls):
                _kernels_py.weighted_kernel_sum(z, nodes, 1.0 + 0j, wf, npow)

        t_py = time_call(run_python) / calls
        if _kernels_c is None:
            print(f"{label:26} {t_py * 1e6:10.1f}us {'missing':>12} {'-':>9}")
            continue

        def run_compiled():
            for _ in range(calls):
                _kernels_c.weighted_kernel_sum(z, nodes, 1.0 + 0j, wf, npow)

        t_c = time_call(run_compiled) / calls
        print(
            f"{label:26} {t_py * 1e6:10.1f}us {t_c * 1e6:10.1f}us {t_py / t_c:8.1f}x"
        )


def bench_end_to_end():
    from polyball.manufactured import random_interior_points, random_polyharmonic
    import polyball._kernels as kernels
    import polyball.solvers as solvers

    rng = np.random.default_rng(1)
    u, _ = random_polyharmonic(3, 2, 4, rng)
    spec = solvers.ProblemSpec(dim=3, order=2, quadrature_order=64)
    data = solvers.BoundaryData.from_polynomial(u, 2)
    points = random_interior_points(3, 50, rng)

    results = {}
    for impl_name, impl in (("python", _kernels_py), ("compiled", _kernels_c)):
        if impl is None:
            continue
        solvers.weighted_kernel_sum = impl.weighted_kernel_sum
        started = time.perf_counter()
        values = solvers.solve_interior(spec, data, points)
        results[impl_name] = (time.perf_counter() - started, values)
    solvers.weighted_kernel_sum = kernels.weighted_kernel_sum

    print()
    print("end-to-end interior solve (n=3, p=2, order=64, 50 points)")
    for name, (elapsed, _values) in results.items():
        print(f"  {name:9} {elapsed * 1e3:8.1f} ms")
    if len(results) == 2:
        delta = np.max(
            np.abs(results["python"][1] - results["compiled"][1])
        )
        print(f"  max |python - compiled| = {delta:.3e}")


if __name__ == "__main__":
    if _kernels_c is None:
        print("compiled extension not available; showing fallback timings only\n")
    bench_kernel_sums()
    bench_end_to_end()
