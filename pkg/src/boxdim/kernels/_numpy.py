"""Pure-numpy kernels.  Same contracts and exact integer outputs as the numba path."""

import numpy as np

from ..core import cell_indices
from ._plan import spread_plan

# Recount a level from scratch once more than this fraction of the live cell
# boundaries disappears there; below it, patch only the affected cells.
RECOUNT_FRACTION = 0.125


def rowmajor_codes(points, level):
    idx = cell_indices(points, level)
    code = idx[:, 0].copy()
    for d in range(1, idx.shape[1]):
        code <<= level
        code |= idx[:, d]
    return code


def hier_codes(points, level):
    idx = cell_indices(points, level)
    dim = idx.shape[1]
    shifts, masks = spread_plan(dim, level)
    code = np.zeros(idx.shape[0], dtype=np.int64)
    for d in range(dim):
        v = idx[:, d].copy()
        for s, m in zip(shifts, masks):
            v = (v | (v << s)) & m
        code |= v << (dim - 1 - d)
    return code


def run_lengths(codes):
    """Distinct values of a sorted code array and how often each occurs."""
    n = codes.shape[0]
    if n == 0:
        return codes[:0].copy(), np.zeros(0, dtype=np.int64)
    head = np.empty(n, dtype=bool)
    head[0] = True
    np.not_equal(codes[1:], codes[:-1], out=head[1:])
    starts = np.flatnonzero(head)
    counts = np.diff(np.append(starts, n)).astype(np.int64)
    return codes[starts], counts


def sum_squares(counts):
    return int(np.dot(counts, counts)) if counts.size else 0


def _bit_length(x):
    # frexp is exact below 2**53; above that the float may round up to the
    # next power of two, which overstates the length by one.
    _, e = np.frexp(x.astype(np.float64))
    e = e.astype(np.int64)
    over = (x >> np.maximum(e - 1, 0)) == 0
    return e - (over & (x > 0))


def shared_levels(cells, dim, levels):
    """Deepest level at which each pair of adjacent distinct cells still coincides.

    ``cells`` are sorted, distinct hierarchical codes at depth ``levels``.
    Entry ``k`` is in ``0..levels-1``; 0 means the pair splits already at level 1.
    """
    if cells.shape[0] < 2:
        return np.zeros(0, dtype=np.int64)
    bl = _bit_length(cells[1:] ^ cells[:-1])
    return levels - 1 - (bl - 1) // dim


def level_sums(cells, counts, dim, levels):
    """Sum of squared occupancies and occupied-cell count at every level.

    Boundary ``k`` sits between fine cells ``k`` and ``k+1``; it disappears at
    the level where the two cells first share a parent.  Walking from the
    finest level to level 1, each level only visits the boundaries that
    disappear there: every maximal chain of them fuses its runs of fine cells
    into one parent cell, and the sum of squares changes by
    ``G**2 - sum(part**2)`` for that cell.  Levels where a large share of the
    boundaries disappear are cheaper to recount from scratch.
    """
    m = cells.shape[0]
    share = shared_levels(cells, dim, levels)
    # share < 63, so int8 lets numpy use its radix sort.
    order = np.argsort(share.astype(np.int8), kind="stable")
    first = np.searchsorted(share[order], np.arange(levels + 1))
    occupied = 1 + np.cumsum(np.bincount(share, minlength=levels))[:levels]
    cum = np.concatenate(([0], np.cumsum(counts)))
    sums = np.empty(levels + 1, dtype=np.int64)
    sums[levels] = sum_squares(counts)
    alive = np.arange(m - 1)
    for j in range(levels - 1, 0, -1):
        gone = order[first[j]:first[j + 1]]
        if gone.size == 0:
            sums[j] = sums[j + 1]
            continue
        if gone.size > RECOUNT_FRACTION * alive.size:
            alive = alive[share[alive] < j]
            edges = np.concatenate(([0], alive + 1, [m]))
            sums[j] = sum_squares(np.diff(cum[edges]))
            continue
        at = np.searchsorted(alive, gone)
        prev = np.where(at > 0, alive[np.maximum(at - 1, 0)], -1)
        parts = cum[gone + 1] - cum[prev + 1]
        alive = np.delete(alive, at)
        slot = np.searchsorted(alive, gone)
        lo = np.where(slot > 0, alive[np.maximum(slot - 1, 0)], -1)
        hi = np.where(slot < alive.size, alive[np.minimum(slot, alive.size - 1)], m - 1)
        change = np.empty(slot.size + 1, dtype=bool)
        change[0] = change[-1] = True
        np.not_equal(slot[1:], slot[:-1], out=change[1:-1])
        opens, closes = change[:-1], change[1:]
        whole = cum[hi[opens] + 1] - cum[lo[opens] + 1]
        tail = cum[hi[closes] + 1] - cum[gone[closes] + 1]
        sums[j] = sums[j + 1] + sum_squares(whole) - sum_squares(parts) - sum_squares(tail)
    return sums[1:], occupied


def sorted_level_sums(codes, dim, levels):
    """Same as :func:`level_sums`, straight from sorted codes with repeats."""
    cells, counts = run_lengths(codes)
    return level_sums(cells, counts, dim, levels)
