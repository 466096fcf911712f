"""Compare the numba kernels with the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--samples 20000]

Each kernel is run once untimed (JIT warm-up), then timed ``--repeat`` times;
the best wall time per backend is printed with the speedup.
"""

import argparse
import time

import numpy as np

from fatpart.kernels import _numba, _numpy
from fatpart.partitions import partitions_of


def _best(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _cases(S, rng):
    mats = rng.standard_normal((S, 4, 4)) + 1j * rng.standard_normal((S, 4, 4))
    p = rng.standard_normal((S, 8)) + 1j * rng.standard_normal((S, 8))
    h = _numpy.complete_h(p, 8)
    lams = [np.asarray(lam.parts, dtype=np.int64) for lam in partitions_of(6)]
    theta = rng.uniform(0, np.pi, size=(S, 4))
    chain = (np.array([0.4, 1.2, 2.0, 2.8]), rng.standard_normal((S, 4)), rng.uniform(size=S))

    def jt(mod):
        return lambda: [mod.jacobi_trudi(h, parts) for parts in lams]

    return {
        "power_sums (4x4, K=8)": lambda mod: (lambda: mod.power_sums(mats, 8)),
        "complete_h (K=8)": lambda mod: (lambda: mod.complete_h(p, 8)),
        "jacobi_trudi (|lam|=6, all)": jt,
        "sp_log_density (k=4)": lambda mod: (lambda: mod.sp_log_density(theta)),
        "metropolis_sp (k=4)": lambda mod: (lambda: mod.metropolis_sp(chain[0], chain[1], chain[2], 0.3, 10)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=20000)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    for name, make in _cases(args.samples, rng).items():
        t_np = _best(make(_numpy), args.repeat)
        t_nb = _best(make(_numba), args.repeat)
        print(f"{name:32s} {1e3 * t_np:11.2f} {1e3 * t_nb:11.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
