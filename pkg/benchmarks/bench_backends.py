"""Compare the numba and pure-numpy kernels on the same data.

Times fd and ffd on 2-D uniform points for each backend and checks both
backends return the same sums.  Usage:

    python3 benchmarks/bench_backends.py [--sizes 100000,1000000] [--levels 10,30] [--reps 5]

The default backend for the library itself is picked with the
``BOXDIM_BACKEND`` environment variable (``numba`` or ``numpy``).
"""

import argparse
import statistics
import sys
import time

from boxdim import _accel
from boxdim.boxcount import run
from boxdim.core import RadiusSchedule, normalize
from boxdim.generators import gen_uniform


def _ints(text):
    return [int(v) for v in text.split(",") if v]


def timed(algo, data, schedule, backend, reps):
    plot = run(algo, data, schedule, backend=backend)  # warm-up; compiles numba kernels
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        run(algo, data, schedule, backend=backend)
        times.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(times), plot.sums


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=_ints, default=[100_000, 1_000_000])
    p.add_argument("--levels", type=_ints, default=[10, 30])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--reps", type=int, default=5)
    args = p.parse_args(argv)

    if not _accel.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend can run", file=sys.stderr)
        return 1

    print(f"{'algo':>4} {'n':>9} {'levels':>6} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in args.sizes:
        data = normalize(gen_uniform(n, args.dim, seed=0), mode="pass-through")
        for lv in args.levels:
            schedule = RadiusSchedule(lv)
            for algo in ("fd", "ffd"):
                t_nb, s_nb = timed(algo, data, schedule, "numba", args.reps)
                t_np, s_np = timed(algo, data, schedule, "numpy", args.reps)
                if s_nb != s_np:
                    print(f"backends disagree for {algo} n={n} levels={lv}", file=sys.stderr)
                    return 2
                print(f"{algo:>4} {n:>9} {lv:>6} {t_nb:>10.1f} {t_np:>10.1f} {t_np / t_nb:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
