"""Hot loops behind the box-counting algorithms, in two interchangeable backends.

``get()`` returns the module for the active backend (see ``boxdim._accel``).
Both modules expose the same functions and return identical integers.
"""

from .. import _accel
from . import _numpy

if _accel.HAVE_NUMBA:
    from . import _numba
else:  # pragma: no cover
    _numba = None


def get(backend=None):
    name = _accel.resolve_backend(backend)
    return _numba if name == "numba" else _numpy
