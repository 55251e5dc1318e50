"""Wall-clock comparison of FD and FFD on in-memory uniform data."""

from __future__ import annotations

import csv
import gc
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .boxcount import run
from .core import RadiusSchedule, normalize
from .generators import gen_uniform

CSV_FIELDS = (
    "algo", "n", "dim", "levels", "rep", "wall_ms",
    "point_updates", "merge_updates", "scans", "updates_per_point",
)


@dataclass(frozen=True)
class BenchRow:
    algo: str
    n: int
    dim: int
    levels: int
    rep: str
    wall_ms: float
    point_updates: int
    merge_updates: int
    scans: int
    updates_per_point: float


@dataclass
class BenchReport:
    """Per-repetition timings plus one ``rep="median"`` row per configuration."""

    reps: int
    rows: list = field(default_factory=list)
    aggregation: str = "median"

    def medians(self) -> list:
        return [r for r in self.rows if r.rep == "median"]

    def median(self, algo: str, n: int, levels: int) -> BenchRow:
        for r in self.medians():
            if (r.algo, r.n, r.levels) == (algo, n, levels):
                return r
        raise KeyError((algo, n, levels))

    def write_csv(self, sink) -> None:
        writer = csv.DictWriter(sink, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            d = asdict(row)
            d["wall_ms"] = f"{row.wall_ms:.3f}"
            d["updates_per_point"] = f"{row.updates_per_point:.6g}"
            writer.writerow(d)


def run_bench(sizes: Sequence[int], levels: Sequence[int], algos: Sequence[str] = ("fd", "ffd"),
              dim: int = 2, reps: int = 5, seed: int = 0, backend: Optional[str] = None,
              progress=None) -> BenchReport:
    """Time each algorithm ``reps`` times per (size, levels) pair.

    One dataset is generated per size and shared by every algorithm and level
    count.  Each algorithm runs once untimed first so JIT compilation and
    first-touch allocation stay out of the measurements.
    """
    report = BenchReport(reps)
    for n in sizes:
        data = normalize(gen_uniform(n, dim, seed), mode="pass-through")
        for lv in levels:
            schedule = RadiusSchedule(lv)
            for algo in algos:
                run(algo, data, schedule, backend=backend)
                times = []
                for rep in range(1, reps + 1):
                    gc.collect()
                    t0 = time.perf_counter()
                    plot = run(algo, data, schedule, backend=backend)
                    elapsed = (time.perf_counter() - t0) * 1e3
                    times.append(elapsed)
                    report.rows.append(_row(algo, n, dim, lv, str(rep), elapsed, plot))
                med = _row(algo, n, dim, lv, "median", statistics.median(times), plot)
                report.rows.append(med)
                if progress is not None:
                    progress(med)
    return report


def _row(algo, n, dim, levels, rep, wall_ms, plot) -> BenchRow:
    c = plot.counters
    return BenchRow(
        algo, n, dim, levels, rep, wall_ms,
        c.point_cell_updates, c.merge_updates, c.dataset_scans, c.updates_per_point(n),
    )
