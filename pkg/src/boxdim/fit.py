"""From a box-count plot to a D2 estimate.

The plot is taken in base-2 logs on both axes, so ``x_j = log2(r_j) = -j``
and ``y_j = log2(S_j)``.  D2 is the least-squares slope of ``y`` against
``x`` over a contiguous range of levels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .boxcount import BoxCountPlot, run
from .core import NormalizedDataset, RadiusSchedule
from .errors import DomainError

# Two windows whose r^2 differ by no more than this are considered tied.
R2_TIE = 1e-12
DEFAULT_MIN_WINDOW = 4


@dataclass(frozen=True)
class LogLogPlot:
    js: tuple
    xs: np.ndarray
    ys: np.ndarray

    def __len__(self):
        return len(self.js)

    @property
    def points(self):
        return list(zip(self.xs.tolist(), self.ys.tolist()))

    def window(self, fit_range: "FitRange"):
        sel = slice(self.js.index(fit_range.j_min), self.js.index(fit_range.j_max) + 1)
        return self.xs[sel], self.ys[sel]


@dataclass(frozen=True)
class FitRange:
    """Inclusive level bounds ``j_min..j_max`` of a regression window."""

    j_min: int
    j_max: int

    def __post_init__(self):
        if not 1 <= self.j_min < self.j_max:
            raise DomainError(f"fit range {self.j_min}..{self.j_max} needs 1 <= j_min < j_max")

    def __str__(self):
        return f"{self.j_min}..{self.j_max}"

    @property
    def size(self) -> int:
        return self.j_max - self.j_min + 1

    @classmethod
    def parse(cls, text: str) -> "FitRange":
        m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
        if not m:
            raise DomainError(f"fit range must look like 'j_min..j_max', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    @classmethod
    def full(cls, levels: int) -> "FitRange":
        return cls(1, levels)


@dataclass(frozen=True)
class D2Estimate:
    d2: float
    r_squared: float
    range: FitRange
    algorithm: str
    plot: LogLogPlot
    boxcount: Optional[BoxCountPlot] = None


def loglog(plot: BoxCountPlot) -> LogLogPlot:
    js = tuple(plot.js)
    sums = np.array(plot.sums, dtype=np.float64)
    if (sums < 1).any():
        raise ValueError("every S_j must be at least 1 to take its logarithm")
    return LogLogPlot(js, -np.array(js, dtype=np.float64), np.log2(sums))


def ols_slope(points, fit_range: Optional[FitRange] = None) -> Tuple[float, float]:
    """Least-squares slope and coefficient of determination of ``(x, y)`` pairs.

    *fit_range*, if given, selects the 1-based positions ``j_min..j_max``.
    A constant ``y`` gives slope 0 and ``r_squared`` 1.
    """
    if isinstance(points, LogLogPlot):
        xs, ys = points.window(fit_range) if fit_range else (points.xs, points.ys)
    else:
        pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
        if fit_range is not None:
            pts = pts[fit_range.j_min - 1:fit_range.j_max]
        xs, ys = pts[:, 0], pts[:, 1]
    if xs.size < 2:
        raise DomainError(f"need at least 2 points for a slope, got {xs.size}")
    if xs.min() == xs.max():
        raise DomainError("x values must not all be equal")
    # Test constancy exactly; a float mean of equal values can be off by an ulp.
    if ys.min() == ys.max():
        return 0.0, 1.0
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    slope = float(np.dot(dx, dy)) / float(np.dot(dx, dx))
    sst = float(np.dot(dy, dy))
    if sst == 0.0:
        # Spread so small its square underflows: no residual is measurable either.
        return slope, 1.0
    resid = dy - slope * dx
    r2 = 1.0 - float(np.dot(resid, resid)) / sst
    return slope, min(max(r2, 0.0), 1.0)


def select_linear_range(plot: LogLogPlot, min_window: int = DEFAULT_MIN_WINDOW) -> FitRange:
    """Contiguous window of at least *min_window* levels with the best r^2.

    Windows within ``R2_TIE`` of the best r^2 tie; among those the longest
    wins, then the one starting at the coarsest level.
    """
    levels = len(plot)
    if not 2 <= min_window <= levels:
        raise ValueError(f"min_window must be in 2..{levels}, got {min_window}")
    scored = []
    for a in range(levels):
        for b in range(a + min_window - 1, levels):
            _, r2 = ols_slope(list(zip(plot.xs[a:b + 1], plot.ys[a:b + 1])))
            scored.append((r2, b - a + 1, -a, plot.js[a], plot.js[b]))
    best = max(s[0] for s in scored)
    ties = [s for s in scored if s[0] >= best - R2_TIE]
    _, _, _, j_min, j_max = max(ties, key=lambda s: (s[1], s[2]))
    return FitRange(j_min, j_max)


FitSpec = Union[str, FitRange, Tuple[int, int], None]


def resolve_fit(fit: FitSpec, plot: LogLogPlot, min_window: int = DEFAULT_MIN_WINDOW) -> FitRange:
    """Turn ``"auto"``, ``"full"``, ``"a..b"``, a tuple or a FitRange into a FitRange."""
    levels = len(plot)
    if fit is None or fit == "full":
        return FitRange(plot.js[0], plot.js[-1])
    if fit == "auto":
        return select_linear_range(plot, min(min_window, levels))
    if isinstance(fit, str):
        fit = FitRange.parse(fit)
    elif not isinstance(fit, FitRange):
        fit = FitRange(*fit)
    if fit.j_max > plot.js[-1]:
        raise DomainError(f"fit range {fit} exceeds the {levels} available levels")
    return fit


def fit_plot(plot: BoxCountPlot, fit: FitSpec = "auto",
             min_window: int = DEFAULT_MIN_WINDOW) -> D2Estimate:
    ll = loglog(plot)
    chosen = resolve_fit(fit, ll, min_window)
    slope, r2 = ols_slope(ll, chosen)
    return D2Estimate(slope, r2, chosen, plot.algorithm, ll, plot)


def estimate_d2(data: NormalizedDataset, schedule: Union[RadiusSchedule, int], algo: str = "ffd",
                fit: FitSpec = "auto", *, min_window: int = DEFAULT_MIN_WINDOW,
                backend: Optional[str] = None) -> D2Estimate:
    """Box-count *data* with the chosen algorithm and fit the log-log slope.

    *fit* is ``"auto"`` (best-r^2 window of at least *min_window* levels,
    capped at the number of levels), ``"full"``, or an explicit range.
    """
    plot = run(algo, data, schedule, backend=backend)
    return fit_plot(plot, fit, min_window)
