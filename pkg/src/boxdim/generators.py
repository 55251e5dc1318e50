"""Seeded synthetic datasets with known correlation dimension.

All randomness comes from the raw 64-bit output of numpy's PCG64 bit
generator (seeded through ``SeedSequence``), which is fixed across platforms
and numpy releases.  Raw words are turned into numbers explicitly:

* a uniform double in [0, 1) is ``(word >> 11) * 2**-53``;
* a choice among ``k`` options is ``((word >> 11) * k) >> 53``.

Chaos-game fixtures draw one word per coordinate for the start state, then
one word per step; the first ``BURN_IN`` states are discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _accel
from ._accel import njit
from .core import RawDataset
from .errors import DomainError

BURN_IN = 100
SIERPINSKI_VERTICES = ((0.0, 0.0), (1.0, 0.0), (0.5, 1.0))
KINDS = ("sierpinski", "uniform", "point-mass", "cantor")
# Theoretical correlation dimension of each fixture family (uniform: its E).
THEORETICAL_D2 = {
    "sierpinski": math.log(3) / math.log(2),
    "cantor": math.log(2) / math.log(3),
    "point-mass": 0.0,
}
_FIXED_DIM = {"sierpinski": 2, "cantor": 1}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    dim: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown generator {self.kind!r}; expected one of {KINDS}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.n < 1:
            raise DomainError(f"n must be at least 1, got {self.n}")
        fixed = _FIXED_DIM.get(self.kind)
        if self.dim is None:
            object.__setattr__(self, "dim", fixed or 2)
        elif fixed is not None and self.dim != fixed:
            raise DomainError(f"{self.kind} data is {fixed}-D; got dim={self.dim}")
        if self.dim < 1:
            raise DomainError(f"dim must be at least 1, got {self.dim}")


def _words(seed, size):
    return np.random.PCG64(seed).random_raw(size)


def _unit(words):
    return (words >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def _choice(words, k):
    return (((words >> np.uint64(11)) * np.uint64(k)) >> np.uint64(53)).astype(np.int64)


@njit(cache=True)
def _sierpinski_nb(x, y, picks, vx, vy, burn):
    n = picks.shape[0] - burn
    out = np.empty((n, 2))
    for t in range(picks.shape[0]):
        k = picks[t]
        x = (x + vx[k]) * 0.5
        y = (y + vy[k]) * 0.5
        if t >= burn:
            out[t - burn, 0] = x
            out[t - burn, 1] = y
    return out


def _sierpinski_py(x, y, picks, vx, vy, burn):
    out = np.empty((picks.shape[0] - burn, 2))
    vx, vy = vx.tolist(), vy.tolist()
    for t, k in enumerate(picks.tolist()):
        x = (x + vx[k]) * 0.5
        y = (y + vy[k]) * 0.5
        if t >= burn:
            out[t - burn] = x, y
    return out


@njit(cache=True)
def _cantor_nb(x, picks, burn):
    out = np.empty((picks.shape[0] - burn, 1))
    for t in range(picks.shape[0]):
        x = x / 3.0 + (2.0 / 3.0) * picks[t]
        if t >= burn:
            out[t - burn, 0] = x
    return out


def _cantor_py(x, picks, burn):
    out = np.empty((picks.shape[0] - burn, 1))
    for t, b in enumerate(picks.tolist()):
        x = x / 3.0 + (2.0 / 3.0) * b
        if t >= burn:
            out[t - burn, 0] = x
    return out


def _compiled(backend):
    return _accel.resolve_backend(backend) == "numba"


def gen_sierpinski(n: int, seed: int = 0, *, backend: Optional[str] = None) -> RawDataset:
    """Chaos-game samples of the Sierpinski triangle on (0,0), (1,0), (0.5,1)."""
    GeneratorSpec("sierpinski", n, 2, seed)
    words = _words(seed, 2 + BURN_IN + n)
    x0, y0 = _unit(words[:2]).tolist()
    picks = _choice(words[2:], 3)
    vx = np.array([v[0] for v in SIERPINSKI_VERTICES])
    vy = np.array([v[1] for v in SIERPINSKI_VERTICES])
    run = _sierpinski_nb if _compiled(backend) else _sierpinski_py
    return RawDataset(run(x0, y0, picks, vx, vy, BURN_IN))


def gen_cantor(n: int, seed: int = 0, *, backend: Optional[str] = None) -> RawDataset:
    """Chaos-game samples of the middle-thirds Cantor set (maps x/3 and x/3 + 2/3)."""
    GeneratorSpec("cantor", n, 1, seed)
    words = _words(seed, 1 + BURN_IN + n)
    x0 = float(_unit(words[:1])[0])
    picks = _choice(words[1:], 2)
    run = _cantor_nb if _compiled(backend) else _cantor_py
    return RawDataset(run(x0, picks, BURN_IN))


def gen_uniform(n: int, dim: int, seed: int = 0) -> RawDataset:
    """``n`` points with independent coordinates uniform on [0, 1)."""
    GeneratorSpec("uniform", n, dim, seed)
    return RawDataset(_unit(_words(seed, n * dim)).reshape(n, dim))


def gen_point_mass(n: int, dim: int) -> RawDataset:
    """``n`` copies of the cube centre; its correlation dimension is 0."""
    GeneratorSpec("point-mass", n, dim)
    return RawDataset(np.full((n, dim), 0.5))


def generate(spec: GeneratorSpec, *, backend: Optional[str] = None) -> RawDataset:
    if spec.kind == "sierpinski":
        return gen_sierpinski(spec.n, spec.seed, backend=backend)
    if spec.kind == "cantor":
        return gen_cantor(spec.n, spec.seed, backend=backend)
    if spec.kind == "uniform":
        return gen_uniform(spec.n, spec.dim, spec.seed)
    return gen_point_mass(spec.n, spec.dim)
