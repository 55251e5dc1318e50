"""Numba availability and backend selection.

The compiled kernels are used when numba imports cleanly.  Setting the
environment variable ``BOXDIM_BACKEND=numpy`` forces the pure-numpy path
(useful for debugging, for platforms without LLVM, and for benchmarking
one path against the other).
"""

import logging
import os

logger = logging.getLogger(__name__)

BACKEND_ENV = "BOXDIM_BACKEND"
BACKENDS = ("numba", "numpy")

try:
    import numba

    njit = numba.njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(pyfunc=None, **kwargs):
        def wrap(func):
            return func

        return wrap if pyfunc is None else wrap(pyfunc)


def resolve_backend(name=None):
    """Return the backend to use: *name* if given, else the env flag, else the fastest available."""
    if name is None:
        name = os.environ.get(BACKEND_ENV, "").strip().lower() or None
    if name is None:
        return "numba" if HAVE_NUMBA else "numpy"
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    if name == "numba" and not HAVE_NUMBA:
        logger.warning("numba requested but not importable; falling back to numpy")
        return "numpy"
    return name
