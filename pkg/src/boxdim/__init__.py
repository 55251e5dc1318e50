"""Correlation fractal dimension (D2) of point sets by box-counting.

Two interchangeable algorithms compute the same box-count plot:

* :func:`fd` rescans the dataset once per grid level;
* :func:`ffd` scans it once at the finest level and derives each coarser
  level by summing child-cell occupancies into their parent cells.
"""

__version__ = "0.1.0"

from .bench import BenchReport, run_bench
from .boxcount import (
    BoxCountPlot,
    LevelRecord,
    OccupancyMap,
    OpCounters,
    coarsen,
    fd,
    ffd,
    iter_ffd_maps,
    occupancies_at_level,
    run,
    sum_squared,
)
from .core import (
    NormalizedDataset,
    RadiusSchedule,
    RawDataset,
    cell_index,
    normalize,
    parent_key,
    row_major_id,
)
from .errors import DomainError, ParseError
from .fit import (
    D2Estimate,
    FitRange,
    LogLogPlot,
    estimate_d2,
    fit_plot,
    loglog,
    ols_slope,
    select_linear_range,
)
from .generators import GeneratorSpec, generate
from .io import IngestOptions, read_points, write_plot, write_points

__all__ = [
    "BenchReport", "BoxCountPlot", "D2Estimate", "DomainError", "FitRange", "GeneratorSpec",
    "IngestOptions", "LevelRecord", "LogLogPlot", "NormalizedDataset", "OccupancyMap",
    "OpCounters", "ParseError", "RadiusSchedule", "RawDataset", "cell_index", "coarsen",
    "estimate_d2", "fd", "ffd", "fit_plot", "generate", "iter_ffd_maps", "loglog", "normalize",
    "occupancies_at_level", "ols_slope", "parent_key", "read_points", "row_major_id", "run",
    "run_bench", "select_linear_range", "sum_squared", "write_plot", "write_points",
]
