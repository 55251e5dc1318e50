"""Box-count kernels: multi-scan FD and single-pass FFD.

Both produce a :class:`BoxCountPlot`: for every grid level ``j`` the sum of
squared cell occupancies ``S_j``, together with counters describing how much
work the run did.  The two algorithms must agree on every ``S_j`` exactly, so
all occupancy arithmetic is done in int64 and guarded against overflow.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .core import (
    WORD_BITS,
    NormalizedDataset,
    RadiusSchedule,
    cell_indices,
)
from .errors import DomainError

_INT64_MAX = np.iinfo(np.int64).max


@dataclass
class OpCounters:
    """Work done by one estimation run.

    ``point_cell_updates`` counts per-point occupancy increments,
    ``merge_updates`` child-to-parent occupancy additions and
    ``dataset_scans`` full passes over the points.
    """

    point_cell_updates: int = 0
    merge_updates: int = 0
    dataset_scans: int = 0

    def updates_per_point(self, n: int) -> float:
        return (self.point_cell_updates + self.merge_updates) / n


@dataclass(frozen=True, eq=False)
class OccupancyMap(Mapping):
    """Occupied cells of one grid level and their point counts.

    Behaves as a read-only mapping from cell key tuples to counts.  ``indices``
    is an (M, E) int64 array sorted lexicographically, ``counts`` the matching
    occupancies; zero-count cells are never stored.
    """

    level: int
    indices: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        keys = np.asarray(self.indices, dtype=np.int64)
        counts = np.asarray(self.counts, dtype=np.int64)
        if keys.ndim != 2 or keys.shape[0] != counts.shape[0]:
            raise ValueError("indices must be (M, E) with one count per row")
        if counts.size and counts.min() < 1:
            raise ValueError("occupancy counts must be positive")
        keys.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "indices", keys)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_dict(cls, level: int, cells: dict, dim: Optional[int] = None) -> "OccupancyMap":
        if not cells:
            return cls(level, np.zeros((0, dim or 1), dtype=np.int64), np.zeros(0, dtype=np.int64))
        items = sorted(cells.items())
        keys = np.array([k for k, _ in items], dtype=np.int64).reshape(len(items), -1)
        return cls(level, keys, np.array([c for _, c in items], dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.indices.shape[1]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @cached_property
    def _cells(self) -> dict:
        return {tuple(int(i) for i in k): int(c) for k, c in zip(self.indices, self.counts)}

    def __getitem__(self, key):
        return self._cells[tuple(key)]

    def __iter__(self):
        return iter(self._cells)

    def __len__(self):
        return self.counts.shape[0]

    def __eq__(self, other):
        if isinstance(other, OccupancyMap):
            return self.level == other.level and self._cells == other._cells
        return Mapping.__eq__(self, other)

    __hash__ = None


@dataclass(frozen=True)
class LevelRecord:
    j: int
    r: float
    s: int
    occupied: int


@dataclass(frozen=True)
class BoxCountPlot:
    """Per-level ``(j, r_j, S_j)`` records, ascending in ``j``, plus run counters."""

    records: tuple
    counters: OpCounters = field(default_factory=OpCounters)
    algorithm: str = ""
    n: int = 0
    dim: int = 0

    @property
    def levels(self) -> int:
        return len(self.records)

    @property
    def js(self) -> list:
        return [rec.j for rec in self.records]

    @property
    def sums(self) -> list:
        return [rec.s for rec in self.records]

    @property
    def occupied(self) -> list:
        return [rec.occupied for rec in self.records]

    @classmethod
    def from_sums(cls, sums, occupied=None, **kwargs) -> "BoxCountPlot":
        """Build a plot from ``S_1..S_R`` given coarsest first."""
        occupied = occupied if occupied is not None else [0] * len(sums)
        records = tuple(
            LevelRecord(j, 2.0 ** -j, int(s), int(o))
            for j, (s, o) in enumerate(zip(sums, occupied), start=1)
        )
        return cls(records, **kwargs)


def _check_accumulator(n: int, largest: Optional[int] = None) -> None:
    # S <= max(C) * sum(C) <= N**2; refuse rather than wrap around.
    largest = n if largest is None else largest
    if largest * n > _INT64_MAX:
        raise DomainError(f"sum of squared occupancies for N={n} may overflow int64")


def sum_squared(occupancy) -> int:
    """Exact ``sum(C_i**2)`` over an :class:`OccupancyMap` or a count array."""
    counts = occupancy.counts if isinstance(occupancy, OccupancyMap) else np.asarray(occupancy, dtype=np.int64)
    if counts.size == 0:
        return 0
    _check_accumulator(int(counts.sum()), int(counts.max()))
    return int(np.dot(counts, counts))


def occupancies_at_level(data: NormalizedDataset, level: int) -> OccupancyMap:
    """Scan every point once and count how many fall in each level-``level`` cell."""
    idx = cell_indices(data.points, level)
    keys, counts = np.unique(idx, axis=0, return_counts=True)
    return OccupancyMap(level, keys, counts.astype(np.int64))


def coarsen(fine: OccupancyMap, counters: Optional[OpCounters] = None) -> OccupancyMap:
    """Aggregate a level ``j+1`` map into level ``j`` by summing children into parents."""
    if fine.level < 2:
        raise ValueError("cannot coarsen a level-1 map: the coarsest grid has no parent")
    if counters is not None:
        counters.merge_updates += len(fine)
    if len(fine) == 0:
        return OccupancyMap(fine.level - 1, fine.indices.copy(), fine.counts.copy())
    parents, slot = np.unique(fine.indices >> 1, axis=0, return_inverse=True)
    counts = np.zeros(parents.shape[0], dtype=np.int64)
    np.add.at(counts, slot.ravel(), fine.counts)
    return OccupancyMap(fine.level - 1, parents, counts)


def iter_ffd_maps(data: NormalizedDataset, schedule: RadiusSchedule,
                  counters: Optional[OpCounters] = None) -> Iterator[OccupancyMap]:
    """Yield occupancy maps from the finest level down to level 1.

    One dataset scan at the finest level, then one :func:`coarsen` per level;
    only the current map and its parent are alive at a time.
    """
    current = occupancies_at_level(data, schedule.levels)
    if counters is not None:
        counters.point_cell_updates += data.n
        counters.dataset_scans += 1
    yield current
    for _ in range(schedule.levels - 1):
        current = coarsen(current, counters)
        yield current


def _as_dataset(data) -> NormalizedDataset:
    return data if isinstance(data, NormalizedDataset) else NormalizedDataset(data)


def _as_schedule(schedule) -> RadiusSchedule:
    return schedule if isinstance(schedule, RadiusSchedule) else RadiusSchedule(schedule)


def fd(data: NormalizedDataset, schedule: RadiusSchedule, *, backend: Optional[str] = None) -> BoxCountPlot:
    """Multi-scan box counting: rescan the whole dataset for every grid level.

    Cells are identified by their row-major id while it fits a 63-bit word and
    by the index tuple beyond that.  Only one level's cells are held at a time.
    """
    data, schedule = _as_dataset(data), _as_schedule(schedule)
    _check_accumulator(data.n)
    k = kernels.get(backend)
    counters = OpCounters()
    records = []
    for j in schedule.js:
        if data.dim * j <= WORD_BITS:
            codes = k.rowmajor_codes(data.points, j)
            codes.sort()
            _, counts = k.run_lengths(codes)
            del codes
        else:
            counts = occupancies_at_level(data, j).counts
        counters.point_cell_updates += data.n
        counters.dataset_scans += 1
        records.append(LevelRecord(j, schedule.radius(j), k.sum_squares(counts), len(counts)))
        del counts
    return BoxCountPlot(tuple(records), counters, "fd", data.n, data.dim)


def ffd(data: NormalizedDataset, schedule: RadiusSchedule, *, backend: Optional[str] = None) -> BoxCountPlot:
    """Single-pass box counting.

    The dataset is scanned once at the finest level; every coarser level is
    derived by adding each occupied cell's count into its parent cell.

    With hierarchical codes (``E * levels <= 63``) the finest cells are kept
    sorted so each parent's children are adjacent.  A cell that is its
    parent's only occupied child passes its count up unchanged, so a chain of
    such cells is handled in one step instead of once per level.  Each
    pass-through still counts as one merge update, so ``merge_updates`` is
    the number of occupied cells summed over levels ``2..R`` either way.
    """
    data, schedule = _as_dataset(data), _as_schedule(schedule)
    _check_accumulator(data.n)
    levels = schedule.levels
    counters = OpCounters(point_cell_updates=data.n, dataset_scans=1)
    if data.dim * levels <= WORD_BITS:
        k = kernels.get(backend)
        codes = k.hier_codes(data.points, levels)
        codes.sort()
        sums, occupied = k.sorted_level_sums(codes, data.dim, levels)
        sums, occupied = [int(s) for s in sums], [int(o) for o in occupied]
    else:
        sums, occupied = [0] * levels, [0] * levels
        scratch = OpCounters()
        for m in iter_ffd_maps(data, schedule, scratch):
            sums[m.level - 1] = sum_squared(m)
            occupied[m.level - 1] = len(m)
    counters.merge_updates = sum(occupied[1:])
    records = tuple(
        LevelRecord(j, schedule.radius(j), sums[j - 1], occupied[j - 1]) for j in schedule.js
    )
    return BoxCountPlot(records, counters, "ffd", data.n, data.dim)


ALGORITHMS = {"fd": fd, "ffd": ffd}


def run(algorithm: str, data, schedule, *, backend: Optional[str] = None) -> BoxCountPlot:
    try:
        func = ALGORITHMS[algorithm]
    except KeyError:
        raise DomainError(f"unknown algorithm {algorithm!r}; expected 'fd' or 'ffd'") from None
    return func(data, schedule, backend=backend)
