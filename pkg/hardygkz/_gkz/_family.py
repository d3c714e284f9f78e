"""Outer test functions and the search for zeros of their images."""

from dataclasses import dataclass
from typing import Iterator

import numpy as np
import numpy.polynomial.polynomial as npoly
import scipy.optimize
from rich.console import Console

from .._base import BaseReport
from .._config import Tolerances
from .._core import (
    DEFAULT_DEGREE,
    DEFAULT_GRID,
    BoundaryFunction,
    DiskFunction,
    OperatorMatrix,
    derivative,
    outer_from_modulus,
    ring_samples,
)
from .._utils import grid_angles, ordered_map

_console = Console(stderr=True)


@dataclass
class NonvanishingWitness(BaseReport):
    """An outer g and a point z0 of the disk where Tg (nearly) vanishes."""

    g: DiskFunction
    z0: complex
    value: complex
    member_index: int = 0


def _random_modulus(rng: np.random.Generator, n: int) -> BoundaryFunction:
    """Positive trigonometric polynomial with minimum in [0.1, 1.1)."""
    _order = int(rng.integers(1, 5))
    _theta = grid_angles(n)
    _values = np.zeros(n)
    for k in range(1, _order + 1):
        _a, _b = rng.uniform(-1.0, 1.0, size=2) / k
        _values += _a * np.cos(k * _theta) + _b * np.sin(k * _theta)
    _values += 0.1 + rng.uniform(0.0, 1.0) - np.min(_values)
    return BoundaryFunction(_values)


def _family_members(seed: int, degree: int, n: int) -> Iterator[DiskFunction]:
    yield DiskFunction([1.0])
    _circle = [complex(np.exp(2j * np.pi * j / 8)) for j in range(8)]
    for _lambda in _circle:
        yield DiskFunction([-_lambda, 1.0])
    yield outer_from_modulus(
        BoundaryFunction.from_callable(lambda theta: 2.0 + np.cos(theta), n), degree
    )

    rng = np.random.default_rng(seed)
    i = 0
    while True:
        _outer = outer_from_modulus(_random_modulus(rng, n), degree, detect_boundary_zeros=False)
        yield _outer
        yield _outer * DiskFunction([-_circle[i % 8], 1.0])
        i += 1


def outer_test_family(
    count: int = 16, seed: int = 42, degree: int = DEFAULT_DEGREE, n: int = DEFAULT_GRID
) -> list[DiskFunction]:
    """Deterministic outer functions: 1, z - lambda on the circle, outer functions of
    random positive moduli and their products with z - lambda."""
    _members = []
    for _g in _family_members(seed, degree, n):
        if len(_members) == count:
            break
        _members.append(_g)
    return _members


def disk_minimum(
    f: DiskFunction, radii=Tolerances.WITNESS_RADII, n: int = DEFAULT_GRID
) -> tuple[float, complex]:
    """Smallest |f| on the concentric grid and the first point attaining it."""
    _best, _where = np.inf, 0j
    for r in radii:
        _samples = ring_samples(f, r, n).samples
        j = int(np.argmin(np.abs(_samples)))
        if abs(_samples[j]) < _best:
            _best = float(abs(_samples[j]))
            _where = complex(r * np.exp(2j * np.pi * j / n))
    return _best, _where


def winding_number(f: DiskFunction, r: float = Tolerances.WEIGHT_RADIUS, n: int = DEFAULT_GRID):
    """Zeros of f inside the circle of radius r; ``None`` if f vanishes on it."""
    _samples = ring_samples(f, r, n).samples
    if np.any(_samples == 0):
        return None
    _turns = np.angle(np.roll(_samples, -1) / _samples)
    return int(round(float(np.sum(_turns)) / (2 * np.pi)))


def _modulus_at(f: DiskFunction, z: complex) -> float:
    return float(abs(npoly.polyval(z, f.taylor)))


def refine_zero(f: DiskFunction, z0: complex, n: int = DEFAULT_GRID) -> complex:
    """Golden-section search along angle then radius inside the grid cell, then Newton."""
    _r, _theta = abs(z0), float(np.angle(z0))
    _step = 2 * np.pi / n
    _angle = scipy.optimize.minimize_scalar(
        lambda t: _modulus_at(f, _r * np.exp(1j * t)),
        bounds=(_theta - _step, _theta + _step),
        method="bounded",
    )
    if _r > 0 and _angle.fun < _modulus_at(f, z0):
        _theta = float(_angle.x)
    _radius = scipy.optimize.minimize_scalar(
        lambda s: _modulus_at(f, s * np.exp(1j * _theta)),
        bounds=(max(0.0, _r - 0.1), min(0.999, _r + 0.1)),
        method="bounded",
    )
    _candidates = [z0, _r * np.exp(1j * _theta), _radius.x * np.exp(1j * _theta)]
    _z = min(_candidates, key=lambda z: _modulus_at(f, z))

    _df = derivative(f)
    for _ in range(30):
        _slope = complex(npoly.polyval(_z, _df.taylor))
        if _slope == 0:
            break
        _next = _z - complex(npoly.polyval(_z, f.taylor)) / _slope
        if abs(_next) >= 1 or _modulus_at(f, _next) >= _modulus_at(f, _z):
            break
        _z = _next
    return complex(_z)


def _member_witness(T: OperatorMatrix, g: DiskFunction, index: int, radii, tol: float, n: int):
    _tg = T.apply(g)
    _scale = float(np.linalg.norm(_tg.taylor))
    if _scale == 0:
        return NonvanishingWitness(g, 0j, 0j, index)
    _threshold = tol * _scale

    for r in radii:
        _samples = ring_samples(_tg, r, n).samples
        _below = np.flatnonzero(np.abs(_samples) < _threshold)
        if _below.size:
            _z = refine_zero(_tg, complex(r * np.exp(2j * np.pi * _below[0] / n)), n)
            return NonvanishingWitness(g, _z, complex(npoly.polyval(_z, _tg.taylor)), index)

    _zeros = winding_number(_tg, max(radii), n)
    if not _zeros:
        return None
    _, _start = disk_minimum(_tg, radii, n)
    _z = refine_zero(_tg, _start, n)
    _value = complex(npoly.polyval(_z, _tg.taylor))
    if abs(_value) < _threshold:
        return NonvanishingWitness(g, _z, _value, index)
    _console.log(
        f"[yellow]T g_{index} winds {_zeros} time(s) around 0 but no zero was "
        f"located below {_threshold:.1e}[/yellow]"
    )
    return None


def check_outer_nonvanishing(
    T: OperatorMatrix,
    family: list[DiskFunction],
    radii=Tolerances.WITNESS_RADII,
    tol: float = 1e-8,
    n: int = DEFAULT_GRID,
) -> NonvanishingWitness | None:
    """First (family, radius, angle) point where T g vanishes, or ``None`` if T passes.

    Members are examined concurrently; the reported witness does not depend
    on the thread count.
    """
    _results = ordered_map(
        lambda item: _member_witness(T, item[1], item[0], radii, tol, n),
        enumerate(family),
    )
    for _witness in _results:
        if _witness is not None:
            return _witness
    return None
