"""Numba-compiled kernels.  Sorting is left to ``np.sort`` in the caller."""

import math

import numpy as np

from .._accel import njit
from ._plan import spread_plan


@njit(cache=True)
def _rowmajor(points, level):
    n, dim = points.shape
    scale = 2.0 ** level
    top = (np.int64(1) << level) - 1
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        code = np.int64(0)
        for d in range(dim):
            v = np.int64(points[i, d] * scale)
            if v > top:
                v = top
            code = (code << level) | v
        out[i] = code
    return out


@njit(cache=True)
def _hier(points, level, shifts, masks):
    n, dim = points.shape
    scale = 2.0 ** level
    top = (np.int64(1) << level) - 1
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        code = np.int64(0)
        for d in range(dim):
            v = np.int64(points[i, d] * scale)
            if v > top:
                v = top
            for k in range(shifts.shape[0]):
                v = (v | (v << shifts[k])) & masks[k]
            code |= v << (dim - 1 - d)
        out[i] = code
    return out


def rowmajor_codes(points, level):
    return _rowmajor(np.ascontiguousarray(points, dtype=np.float64), level)


def hier_codes(points, level):
    pts = np.ascontiguousarray(points, dtype=np.float64)
    shifts, masks = spread_plan(pts.shape[1], level)
    return _hier(pts, level, shifts, masks)


@njit(cache=True)
def run_lengths(codes):
    n = codes.shape[0]
    cells = np.empty(n, dtype=np.int64)
    counts = np.empty(n, dtype=np.int64)
    m = 0
    for i in range(n):
        if m > 0 and codes[i] == cells[m - 1]:
            counts[m - 1] += 1
        else:
            cells[m] = codes[i]
            counts[m] = 1
            m += 1
    return cells[:m].copy(), counts[:m].copy()


@njit(cache=True)
def _sum_squares(counts):
    total = np.int64(0)
    for c in counts:
        total += c * c
    return total


def sum_squares(counts):
    return int(_sum_squares(counts))


try:
    # LLVM ctlz; numba keeps it under an "unsafe" path but has shipped it for years.
    from numba.cpython.unsafe.numbers import leading_zeros as _clz
except ImportError:  # pragma: no cover
    _clz = None

if _clz is not None:
    @njit(cache=True)
    def _bit_length(x):
        return 64 - _clz(np.uint64(x))
else:  # pragma: no cover
    @njit(cache=True)
    def _bit_length(x):
        # frexp rounds x above 2**53 and can land one exponent high.
        if x == 0:
            return 0
        e = math.frexp(float(x))[1]
        if (x >> (e - 1)) == 0:
            e -= 1
        return e


@njit(cache=True)
def _shared_levels(cells, dim, levels):
    m = cells.shape[0]
    out = np.empty(max(m - 1, 0), dtype=np.int64)
    for k in range(m - 1):
        out[k] = levels - 1 - (_bit_length(cells[k + 1] ^ cells[k]) - 1) // dim
    return out


def shared_levels(cells, dim, levels):
    return _shared_levels(cells, dim, levels)


@njit(cache=True)
def _walk(codes, counts, dim, levels):
    # One left-to-right pass over sorted fine cells.  ``codes`` may repeat
    # (raw sorted codes, counts is None) or be distinct cells with counts.
    # The stack holds the open groups of the current prefix, deepest on top,
    # each with the level it lives at and its running count.  A group popped
    # at depth d whose enclosing group sits at depth p is one occupied cell,
    # with the same count, at every level p+1..d; it is added to that level
    # span through difference arrays, so the pass costs O(M + levels).
    m = codes.shape[0]
    dsum = np.zeros(levels + 2, dtype=np.int64)
    docc = np.zeros(levels + 2, dtype=np.int64)
    depth = np.empty(levels + 2, dtype=np.int64)
    size = np.empty(levels + 2, dtype=np.int64)
    # Shared level for each possible bit length of (next ^ code).
    share_of = np.empty(65, dtype=np.int64)
    for b in range(1, 65):
        share_of[b] = levels - 1 - (b - 1) // dim
    top = -1
    k = 0
    while k < m:
        code = codes[k]
        if counts is None:
            c = 1
            while k + 1 < m and codes[k + 1] == code:
                c += 1
                k += 1
        else:
            c = counts[k]
        k += 1
        if k < m:
            s = share_of[_bit_length(codes[k] ^ code)]
        else:
            s = 0
        # The fine cell itself, closed at boundary s; its span ends at the
        # finest level, so only the opening side of the difference is kept.
        below = depth[top] if top >= 0 else -1
        p = below if below > s else s
        dsum[p + 1] += c * c
        docc[p + 1] += 1
        if below == p:
            size[top] += c
        else:
            top += 1
            depth[top] = s
            size[top] = c
        while top >= 0 and depth[top] > s:
            d = depth[top]
            c = size[top]
            top -= 1
            below = depth[top] if top >= 0 else -1
            p = below if below > s else s
            dsum[p + 1] += c * c
            dsum[d + 1] -= c * c
            docc[p + 1] += 1
            docc[d + 1] -= 1
            if below == p:
                size[top] += c
            else:
                top += 1
                depth[top] = s
                size[top] = c
    sums = np.empty(levels, dtype=np.int64)
    occupied = np.empty(levels, dtype=np.int64)
    acc_s = np.int64(0)
    acc_o = np.int64(0)
    for j in range(1, levels + 1):
        acc_s += dsum[j]
        acc_o += docc[j]
        sums[j - 1] = acc_s
        occupied[j - 1] = acc_o
    return sums, occupied


def level_sums(cells, counts, dim, levels):
    """S_j and occupied-cell counts for j = 1..levels from distinct sorted cells."""
    return _walk(cells, counts, dim, levels)


def sorted_level_sums(codes, dim, levels):
    """Same as :func:`level_sums`, straight from sorted codes with repeats."""
    return _walk(codes, None, dim, levels)
