"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Times each kernel in isolation and one end-to-end exact sweep (Heun
residual, n <= 60 on 65 points) with each backend swapped in.
"""
import argparse
from fractions import Fraction
import time

from icverify import _kernels_py, exact_core, kernels
from icverify.family_numeric import FamilyConfig, scan_logconvexity_numeric
from icverify.grids import GridSpec

try:
    from icverify import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def use(mod):
    for name in ("squared_binomial_coeffs", "homogeneous_eval", "log_ic_binomial", "log_ic_series"):
        setattr(kernels, name, getattr(mod, name))
    exact_core._cached_poly.cache_clear()
    exact_core._derivatives.cache_clear()


def workloads(mod):
    coeffs = mod.squared_binomial_coeffs(100)
    pts = [Fraction(a, 999983) for a in range(1, 999983, 5003)]
    scan_grid = GridSpec("uniform", 0, 5, 201)

    def sweep():
        use(mod)
        for n in range(1, 61):
            for i in range(65):
                exact_core.heun_residual(n, Fraction(i, 64))

    def scans():
        use(mod)
        for c in (0, 1):
            for n in (Fraction(1, 2), 1, 2, 5):
                scan_logconvexity_numeric(FamilyConfig(c, n), scan_grid)

    return {
        "squared_binomial_coeffs(n=1..80)": lambda: [mod.squared_binomial_coeffs(n) for n in range(1, 81)],
        "homogeneous_eval(deg 200, 200 pts)": lambda: [mod.homogeneous_eval(coeffs, p.numerator, p.denominator) for p in pts],
        "log_ic_binomial(n=100, 500 pts)": lambda: [mod.log_ic_binomial(100, i / 501) for i in range(1, 501)],
        "log_ic_series(negbin n=1/2, 500 pts)": lambda: [mod.log_ic_series(1, 0.5, i / 100, 1e-13, 10**6) for i in range(1, 501)],
        "end-to-end Heun sweep": sweep,
        "end-to-end conjecture scans": scans,
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    backends = [_kernels_py] + ([_kernels_c] if _kernels_c is not None else [])
    if _kernels_c is None:
        print("compiled kernels not built; timing the pure-Python backend only")
    default = kernels.BACKEND
    results = {m.NAME: {k: best_of(fn, args.repeat) for k, fn in workloads(m).items()} for m in backends}
    names = list(next(iter(results.values())))
    print(f"{'workload':40s}" + "".join(f"{m.NAME:>12s}" for m in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for k in names:
        row = f"{k:40s}" + "".join(f"{results[m.NAME][k]:11.4f}s" for m in backends)
        if len(backends) == 2:
            row += f"{results['python'][k] / results['cython'][k]:11.1f}x"
        print(row)
    use(_kernels_c if default == "cython" else _kernels_py)


if __name__ == "__main__":
    main()
