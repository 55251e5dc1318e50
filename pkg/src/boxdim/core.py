"""Datasets, the radius schedule, and grid-cell geometry.

Grid level ``j`` splits each axis of the unit cube into ``2**j`` equal
intervals, so a cell has side ``r = 1/2**j``.  A cell is identified by its
per-dimension integer indices (a ``CellKey`` tuple).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .errors import DomainError

CellKey = Tuple[int, ...]

# Per-dimension indices at level j need j bits; int64 leaves 62 usable
# bits once the sign bit and floor(1.0 * 2**j) headroom are accounted for.
MAX_LEVELS = 62
# Packed integer ids must stay below 2**63.
WORD_BITS = 63


def _frozen_array(values, dtype=np.float64):
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class RawDataset:
    """N points with E real-valued attributes, in arbitrary units."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise DomainError(f"points must be a 2-D array, got shape {pts.shape}")
        if pts.shape[0] == 0:
            raise DomainError("empty dataset")
        if pts.shape[1] == 0:
            raise DomainError("points must have at least one attribute")
        bad = ~np.isfinite(pts)
        if bad.any():
            i, d = np.argwhere(bad)[0]
            raise DomainError(f"non-finite coordinate at point {i}, dimension {d}")
        object.__setattr__(self, "points", _frozen_array(pts))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class NormalizedDataset:
    """Points inside the closed unit E-cube.

    ``bounds`` holds the per-dimension ``(min, max)`` pairs used to map the
    source data; for pass-through normalization it is ``(0.0, 1.0)`` per axis.
    """

    points: np.ndarray
    bounds: tuple = field(default=())

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise DomainError(f"expected a non-empty (N, E) array, got shape {pts.shape}")
        if not np.isfinite(pts).all():
            raise DomainError("non-finite coordinate in normalized data")
        if pts.min() < 0.0 or pts.max() > 1.0:
            raise DomainError("normalized coordinates must lie in [0, 1]")
        object.__setattr__(self, "points", _frozen_array(pts))
        if not self.bounds:
            object.__setattr__(self, "bounds", tuple((0.0, 1.0) for _ in range(pts.shape[1])))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @classmethod
    def from_unit(cls, points) -> "NormalizedDataset":
        return normalize(RawDataset(points), mode="pass-through")


@dataclass(frozen=True)
class RadiusSchedule:
    """Grid resolutions ``r_j = 1/2**j`` for ``j = 1..levels``.

    Level 1 (``r = 1/2``) is the coarsest grid and ``levels`` the finest.
    """

    levels: int

    def __post_init__(self):
        if isinstance(self.levels, bool) or not isinstance(self.levels, (int, np.integer)):
            raise DomainError(f"levels must be an integer, got {self.levels!r}")
        if self.levels < 2:
            raise DomainError(f"need at least 2 grid levels for a slope, got {self.levels}")
        if self.levels > MAX_LEVELS:
            raise DomainError(
                f"{self.levels} levels exceed the {MAX_LEVELS}-bit per-dimension index width"
            )
        object.__setattr__(self, "levels", int(self.levels))

    @property
    def js(self) -> range:
        return range(1, self.levels + 1)

    @property
    def radii(self) -> np.ndarray:
        return np.array([2.0 ** -j for j in self.js])

    def radius(self, j: int) -> float:
        return 2.0 ** -j


def normalize(raw: RawDataset, mode: str = "min-max") -> NormalizedDataset:
    """Map a raw dataset into the unit cube.

    ``min-max`` rescales every dimension so its minimum goes to 0 and its
    maximum to 1; a constant dimension maps to 0.  ``pass-through`` keeps the
    coordinates as they are and requires them to already lie in [0, 1].
    """
    if not isinstance(raw, RawDataset):
        raw = RawDataset(raw)
    pts = raw.points
    if mode in ("min-max", "minmax"):
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        span = hi - lo
        out = np.zeros_like(pts)
        live = span > 0
        out[:, live] = (pts[:, live] - lo[live]) / span[live]
        bounds = tuple((float(a), float(b)) for a, b in zip(lo, hi))
        return NormalizedDataset(out, bounds)
    if mode in ("pass-through", "none"):
        bad = (pts < 0.0) | (pts > 1.0)
        if bad.any():
            i, d = np.argwhere(bad)[0]
            raise DomainError(
                f"point {i} has coordinate {pts[i, d]!r} outside [0, 1] in dimension {d}"
            )
        return NormalizedDataset(pts, tuple((0.0, 1.0) for _ in range(raw.dim)))
    raise DomainError(f"unknown normalization mode {mode!r}")


def _check_level(level: int) -> None:
    if not 1 <= level <= MAX_LEVELS:
        raise ValueError(f"level must be in 1..{MAX_LEVELS}, got {level}")


def cell_index(point, level: int) -> CellKey:
    """Cell containing *point* at grid *level*; 1.0 lands in the last cell."""
    _check_level(level)
    top = (1 << level) - 1
    scale = 2.0 ** level
    key = []
    for x in np.atleast_1d(np.asarray(point, dtype=np.float64)):
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"coordinate {x!r} outside [0, 1]")
        key.append(min(int(x * scale), top))
    return tuple(key)


def cell_indices(points: np.ndarray, level: int) -> np.ndarray:
    """Vectorized :func:`cell_index` over an (N, E) array; returns int64 indices."""
    _check_level(level)
    idx = (np.asarray(points, dtype=np.float64) * (2.0 ** level)).astype(np.int64)
    np.minimum(idx, (1 << level) - 1, out=idx)
    return idx


def parent_key(key: CellKey, level: int) -> CellKey:
    """The level ``level - 1`` cell that contains the level-``level`` cell *key*."""
    if level < 2:
        raise ValueError("the coarsest grid (level 1) has no parent")
    return tuple(int(i) >> 1 for i in key)


def row_major_id(key: CellKey, level: int) -> int:
    """Row-major linear id of *key* in the ``(2**level)**E`` grid.

    Raises :class:`DomainError` when the id would not fit a signed 64-bit
    word; use the tuple key directly in that case.
    """
    _check_level(level)
    if len(key) * level > WORD_BITS:
        raise DomainError(
            f"row-major id needs {len(key) * level} bits; only {WORD_BITS} available"
        )
    side = 1 << level
    out = 0
    for i in key:
        if not 0 <= i < side:
            raise ValueError(f"index {i} outside [0, {side}) at level {level}")
        out = out * side + int(i)
    return out
