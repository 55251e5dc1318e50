"""Bit-spreading plan for hierarchical cell codes.

A hierarchical code interleaves the per-dimension index bits so that the
code of a cell at level ``j`` is its level-``j+1`` child's code shifted
right by ``E``.  Sorted codes therefore keep every parent's children
contiguous at every level at once.

Spreading ``bits`` index bits to stride ``E`` is done in ``ceil(log2(bits))``
shift-or-mask steps (the classic "part1by1" trick generalized to any E).
"""

import functools

import numpy as np


@functools.lru_cache(maxsize=None)
def spread_plan(dim, bits):
    """Return ``(shifts, masks)`` int64 arrays that move bit ``i`` to ``i * dim``."""
    if dim * bits > 63:
        raise ValueError(f"{dim} x {bits} bits do not fit a 63-bit code")
    shifts, masks = [], []
    if dim > 1 and bits > 1:
        s = 1
        while s < bits:
            s <<= 1
        s >>= 1
        while s >= 1:
            mask = 0
            for i in range(bits):
                mask |= 1 << ((i // s) * s * dim + i % s)
            shifts.append(s * (dim - 1))
            masks.append(mask)
            s >>= 1
    return np.array(shifts, dtype=np.int64), np.array(masks, dtype=np.int64)
