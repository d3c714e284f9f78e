"""Outer functions, Blaschke and atomic singular factors, inner-outer factorization."""

from dataclasses import dataclass, field

import numpy as np
import numpy.polynomial.polynomial as npoly
from rich.console import Console

from .._base import (
    BaseReport,
    BoundaryZeroError,
    DomainError,
    ModulusTooSmallError,
)
from .._config import Tolerances
from .._utils import decode_complex, encode_complex, grid_points
from ._function import (
    DEFAULT_DEGREE,
    DEFAULT_GRID,
    BoundaryFunction,
    DiskFunction,
    _real_part,
    boundary_samples,
    derivative,
    herglotz_transform,
    project_analytic,
)

_console = Console(stderr=True)

# Grid points closer than this to a boundary zero are filled in, not divided.
_COINCIDENT = 1e-12
# Relative mismatch allowed between the two slopes of a V-shaped minimum.
_V_SHAPE = 1e-2
# Deflation remainders below this (relative to the coefficients) count as a root.
_DEFLATION = 1e-6


@dataclass(frozen=True)
class BlaschkeProduct:
    """front * prod (z - a_j) / (1 - conj(a_j) z) over a finite zero list."""

    zeros: tuple = ()
    front: complex = 1.0

    def __post_init__(self):
        _zeros = tuple(complex(a) for a in self.zeros)
        for a in _zeros:
            if abs(a) >= 1:
                raise DomainError(f"Blaschke zeros lie in the open disk, got |a| = {abs(a)}")
        if abs(abs(complex(self.front)) - 1) > Tolerances.UNIT_MODULUS:
            raise DomainError(f"Blaschke front constant must be unimodular, got {self.front}")
        object.__setattr__(self, "zeros", _zeros)
        object.__setattr__(self, "front", complex(self.front))

    def to_dict(self) -> dict:
        return {
            "blaschke": {
                "zeros": [encode_complex(a) for a in self.zeros],
                "front": encode_complex(self.front),
            }
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BlaschkeProduct":
        _data = data.get("blaschke", data)
        return cls(
            tuple(decode_complex(a) for a in _data.get("zeros", [])),
            decode_complex(_data.get("front", [1.0, 0.0])),
        )


@dataclass(frozen=True)
class SingularAtom:
    """Point mass ``mass`` at ``atom`` on the circle: exp(-mass (atom + z)/(atom - z))."""

    atom: complex
    mass: float

    def __post_init__(self):
        if abs(abs(complex(self.atom)) - 1) > Tolerances.BOUNDARY_ROOT:
            raise DomainError(f"Singular atoms lie on the unit circle, got |atom| = {abs(self.atom)}")
        if not self.mass > 0:
            raise DomainError(f"Singular mass must be positive, got {self.mass}")
        object.__setattr__(self, "atom", complex(self.atom))
        object.__setattr__(self, "mass", float(self.mass))

    def to_dict(self) -> dict:
        return {"atom": {"lambda": encode_complex(self.atom), "mass": self.mass}}

    @classmethod
    def from_dict(cls, data: dict) -> "SingularAtom":
        _data = data.get("atom", data)
        return cls(decode_complex(_data["lambda"]), float(_data["mass"]))


@dataclass
class OuternessReport(BaseReport):
    """Jensen defect of a function: mean log|f*| minus log|f(0)| after removing z^m."""

    defect: float
    zero_order_at_origin: int
    verdict: bool
    boundary_roots: list = field(default_factory=list)


@dataclass
class InnerPart(BaseReport):
    """Inner factor on the grid plus its (possibly aliased) Taylor projection."""

    boundary: BoundaryFunction
    taylor: DiskFunction
    negative_energy_ratio: float


@dataclass
class Factorization(BaseReport):
    outer: DiskFunction
    inner: InnerPart
    outerness: OuternessReport | None = None


def blaschke_eval(b: BlaschkeProduct, z):
    """Evaluate a finite Blaschke product on the closed disk (vectorized)."""
    _z = np.asarray(z, dtype=complex)
    if np.any(np.abs(_z) > 1 + 1e-12):
        raise DomainError("blaschke_eval is defined on the closed unit disk")
    _value = np.full(_z.shape, b.front, dtype=complex)
    for a in b.zeros:
        _value = _value * (_z - a) / (1 - np.conj(a) * _z)
    return complex(_value) if _value.ndim == 0 else _value


def blaschke_samples(b: BlaschkeProduct, n: int = DEFAULT_GRID) -> BoundaryFunction:
    return BoundaryFunction(blaschke_eval(b, grid_points(n)))


def blaschke_taylor(
    b: BlaschkeProduct, degree: int = DEFAULT_DEGREE, n: int = DEFAULT_GRID
) -> DiskFunction:
    """Power series of the Blaschke product truncated at ``degree``."""
    _taylor, _ratio = project_analytic(blaschke_samples(b, n), degree)
    if _ratio > Tolerances.ANALYTIC_RATIO:
        _console.log(
            f"[yellow]Blaschke series aliased on {n} points (ratio {_ratio:.2e})[/yellow]"
        )
    return _taylor


def singular_inner_eval(s: SingularAtom, z):
    """exp(-mass (atom + z)/(atom - z)) on the open disk."""
    _z = np.asarray(z, dtype=complex)
    if np.any(np.abs(_z) >= 1):
        raise DomainError("singular_inner_eval is defined on the open unit disk")
    _value = np.exp(-s.mass * (s.atom + _z) / (s.atom - _z))
    return complex(_value) if _value.ndim == 0 else _value


def singular_inner_samples(s: SingularAtom, n: int = DEFAULT_GRID) -> BoundaryFunction:
    """Unimodular boundary values; a grid point sitting on the atom gets 0."""
    _zeta = grid_points(n)
    _gap = s.atom - _zeta
    _on_atom = np.abs(_gap) < _COINCIDENT
    _gap = np.where(_on_atom, 1.0, _gap)
    _values = np.exp(-s.mass * (s.atom + _zeta) / _gap)
    return BoundaryFunction(np.where(_on_atom, 0.0, _values))


def _unit(value: complex) -> complex:
    if abs(abs(value) - 1) > Tolerances.BOUNDARY_ROOT:
        raise DomainError(f"Boundary zeros lie on the unit circle, got |lambda| = {abs(value)}")
    return value / abs(value)


def _detect_grid_zeros(modulus: np.ndarray, floor: float) -> list[complex]:
    """Boundary zeros of the form |zeta - lambda| seen on the grid.

    An isolated sub-floor sample is a zero on the node itself; anything else
    under the floor is an error. A local minimum whose two sides rise by the
    same slope (a V shape) is a zero between nodes, located by inverting
    |zeta - lambda| = 2 sin(|theta - theta0| / 2) on the minimum and the
    farther neighbour.
    """
    _n = modulus.size
    _step = 2 * np.pi / _n
    _zeros = []
    _below = modulus <= floor
    for j in np.flatnonzero(_below):
        _left, _right = modulus[(j - 1) % _n], modulus[(j + 1) % _n]
        if _left <= floor or _right <= floor:
            raise ModulusTooSmallError(int(j), float(modulus[j]), floor)
        _zeros.append(complex(np.exp(2j * np.pi * j / _n)))

    _left, _right = np.roll(modulus, 1), np.roll(modulus, -1)
    for j in np.flatnonzero((modulus <= _left) & (modulus < _right) & ~_below):
        if _left[j] < _right[j]:
            _near, _far, _side = _left[j], _right[j], -1
        else:
            _near, _far, _side = _right[j], _left[j], 1
        _rise = _far - modulus[j]
        if modulus[j] > 0.5 * _rise * (1 + _V_SHAPE):
            continue
        if abs(_rise - (modulus[j] + _near)) > _V_SHAPE * (_far + _near):
            continue
        _zeros.append(complex(np.exp(1j * _locate_between_nodes(modulus, int(j), _side))))
    return _zeros


def _locate_between_nodes(modulus: np.ndarray, j: int, side: int, sweeps: int = 8) -> float:
    """Angle of the zero next to node j on the given side.

    The minimum and the farther neighbour fix the offset once the smooth
    cofactor is known; its log-slope is read off the quotient four nodes out
    on either side and the two estimates are alternated.
    """
    _n = modulus.size
    _step = 2 * np.pi / _n
    _far = modulus[(j - side) % _n]
    _ahead, _behind = modulus[(j + 4) % _n], modulus[(j - 4) % _n]
    _slope, _angle = 0.0, j * _step
    for _ in range(sweeps):
        _r = modulus[j] / (_far * np.exp(_slope * side * _step))
        _offset = 2 * np.arctan2(_r * np.sin(_step / 2), 1 - _r * np.cos(_step / 2))
        _angle = j * _step + side * _offset
        _q_ahead = _ahead / abs(2 * np.sin((4 * _step - side * _offset) / 2))
        _q_behind = _behind / abs(2 * np.sin((4 * _step + side * _offset) / 2))
        _slope = np.log(_q_ahead / _q_behind) / (8 * _step)
    return float(_angle)


def _divide_boundary_zeros(modulus: np.ndarray, zeros: list[complex]) -> np.ndarray:
    """G / prod |zeta - lambda|, filling coincident grid points from their neighbours."""
    _zeta = grid_points(modulus.size)
    _quotient = modulus.astype(float).copy()
    _holes = np.zeros(modulus.size, dtype=bool)
    for _lambda in zeros:
        _distance = np.abs(_zeta - _lambda)
        _hole = _distance < _COINCIDENT
        _quotient = _quotient / np.where(_hole, 1.0, _distance)
        _holes |= _hole
    for j in np.flatnonzero(_holes):
        _neighbours = [(j - 1) % modulus.size, (j + 1) % modulus.size]
        if _holes[_neighbours].any():
            raise ModulusTooSmallError(int(j), float(modulus[j]), Tolerances.MODULUS_FLOOR)
        _quotient[j] = np.mean(_quotient[_neighbours])
    return _quotient


def outer_from_modulus(
    modulus: BoundaryFunction,
    degree: int = DEFAULT_DEGREE,
    boundary_zeros=None,
    detect_boundary_zeros: bool = True,
    floor: float = Tolerances.MODULUS_FLOOR,
) -> DiskFunction:
    """Outer function g with |g*| = G and g(0) > 0.

    g = exp(herglotz(log G)). Boundary zeros of the form |zeta - lambda|,
    declared or detected on the grid (sub-floor samples, or V-shaped minima
    between nodes), are divided out of G and restored as factors
    (1 - conj(lambda) z).
    """
    _modulus = _real_part(modulus, 1e-12)
    if np.any(_modulus < 0):
        raise DomainError("A boundary modulus is non-negative")

    _zeros = [_unit(complex(_l)) for _l in (boundary_zeros or [])]
    if detect_boundary_zeros:
        for _detected in _detect_grid_zeros(_modulus, floor):
            if all(abs(_detected - _l) > 1e-8 for _l in _zeros):
                _zeros.append(_detected)
    if _zeros:
        _console.log(f"Dividing out {len(_zeros)} boundary zero(s) of the modulus")

    _quotient = _divide_boundary_zeros(_modulus, _zeros)
    _argmin = int(np.argmin(_quotient))
    if _quotient[_argmin] <= floor:
        raise ModulusTooSmallError(_argmin, float(_quotient[_argmin]), floor)

    _log = BoundaryFunction(np.log(_quotient))
    _h = herglotz_transform(_log, degree)
    _exp = BoundaryFunction(np.exp(boundary_samples(_h, modulus.n).samples))
    _g, _ratio = project_analytic(_exp, degree)
    if _ratio > Tolerances.ANALYTIC_RATIO:
        _console.log(
            f"[yellow]Outer function aliased on {modulus.n} points (ratio {_ratio:.2e}); "
            f"consider a finer grid[/yellow]"
        )

    for _lambda in _zeros:
        _g = (_g * DiskFunction([1.0, -np.conj(_lambda)])).truncate(degree)
    return _g


def _samples_of(f, n: int) -> BoundaryFunction:
    if isinstance(f, BoundaryFunction):
        return f
    return boundary_samples(f, n)


def outer_part(f, n: int = DEFAULT_GRID, degree: int = DEFAULT_DEGREE) -> DiskFunction:
    """Outer factor of f (a DiskFunction or its boundary samples)."""
    _samples = _samples_of(f, n)
    _modulus = np.abs(_samples.samples)
    _argmin = int(np.argmin(_modulus))
    if _modulus[_argmin] <= Tolerances.MODULUS_FLOOR:
        raise BoundaryZeroError(
            f"Boundary modulus {_modulus[_argmin]:.3e} at angle "
            f"{_samples.angles[_argmin]:.6f}: f has a zero or singular mass on the boundary"
        )
    return outer_from_modulus(BoundaryFunction(_modulus), degree, detect_boundary_zeros=False)


def inner_part(f, n: int = DEFAULT_GRID, degree: int = DEFAULT_DEGREE) -> InnerPart:
    """Inner factor f*/outer* on the grid with its Taylor projection."""
    return factorize(f, n, degree).inner


def factorize(f, n: int = DEFAULT_GRID, degree: int = DEFAULT_DEGREE) -> Factorization:
    """Inner-outer factorization of a DiskFunction or of boundary samples."""
    _samples = _samples_of(f, n)
    _outer = outer_part(_samples, _samples.n, degree)
    _inner_boundary = _samples / boundary_samples(_outer, _samples.n)
    _taylor, _ratio = project_analytic(_inner_boundary, degree)
    if _ratio > Tolerances.ANALYTIC_RATIO:
        _console.log(
            f"[yellow]Inner factor projection is aliased (negative energy {_ratio:.2e}); "
            f"the boundary samples remain exact[/yellow]"
        )
    _inner = InnerPart(_inner_boundary, _taylor, _ratio)
    _report = is_outer(f, _samples.n) if isinstance(f, DiskFunction) else None
    return Factorization(_outer, _inner, _report)


def _newton(taylor: np.ndarray, start: complex, steps: int = 50) -> complex:
    _dtaylor = npoly.polyder(taylor)
    _lambda = start
    for _ in range(steps):
        _slope = complex(npoly.polyval(_lambda, _dtaylor))
        if _slope == 0:
            break
        _step = complex(npoly.polyval(_lambda, taylor)) / _slope
        _lambda -= _step
        if abs(_step) < 1e-15:
            break
    return _lambda


def _root_multiplicity(taylor: np.ndarray, root: complex) -> int:
    """How many times (z - root) divides the polynomial, up to a relative remainder."""
    _multiplicity, _quotient = 0, np.asarray(taylor, dtype=complex)
    while _quotient.size > 1:
        _next, _remainder = npoly.polydiv(_quotient, np.array([-root, 1.0]))
        if abs(_remainder[0]) > _DEFLATION * np.max(np.abs(_quotient)):
            break
        _multiplicity, _quotient = _multiplicity + 1, _next
    return max(_multiplicity, 1)


def _boundary_roots(f: DiskFunction, samples: np.ndarray) -> list[complex]:
    """Roots of the polynomial f lying on the unit circle, repeated by multiplicity.

    Candidates are grid minima of |f*| small enough to sit within half a
    grid step of a root; Newton iteration confirms and polishes them. A
    root of multiplicity m is polished again as a simple root of f^(m-1).
    """
    if f.effective_degree == 0:
        return []
    _n = samples.size
    _modulus = np.abs(samples)
    _scale = float(np.max(_modulus))
    _slope = float(np.max(np.abs(boundary_samples(derivative(f), _n).samples)))
    _threshold = _slope * np.pi / _n * (1 + 1e-6) + 1e-14 * _scale
    _minima = (_modulus <= np.roll(_modulus, 1)) & (_modulus <= np.roll(_modulus, -1))

    _distinct: list[complex] = []
    _roots: list[complex] = []
    for j in np.flatnonzero(_minima & (_modulus <= _threshold)):
        _lambda = _newton(f.taylor, complex(np.exp(2j * np.pi * j / _n)))
        if abs(npoly.polyval(_lambda, f.taylor)) > 1e-10 * _scale:
            continue
        # Newton only converges linearly to a multiple root
        _multiplicity = 1
        for _ in range(f.degree):
            _found = _root_multiplicity(f.taylor, _lambda)
            if _found == _multiplicity and _found > 1:
                break
            _multiplicity = _found
            if _multiplicity == 1:
                break
            _lambda = _newton(npoly.polyder(f.taylor, _multiplicity - 1), _lambda)
        if abs(abs(_lambda) - 1) > Tolerances.BOUNDARY_ROOT:
            continue
        _lambda /= abs(_lambda)
        if all(abs(_lambda - _r) > Tolerances.BOUNDARY_ROOT for _r in _distinct):
            _distinct.append(_lambda)
            _roots.extend([_lambda] * _multiplicity)
    return _roots


def _log_mean_without_roots(f: DiskFunction, n: int, roots: list[complex]) -> float:
    """Mean of log|f*| using that log|zeta - lambda| has mean zero for |lambda| = 1.

    The boundary roots are deflated out of the Taylor coefficients, so the
    cofactor has no zero on the grid and its samples need no filling.
    """
    _cofactor = np.asarray(f.taylor, dtype=complex)
    for _lambda in roots:
        _cofactor = npoly.polydiv(_cofactor, np.array([-_lambda, 1.0]))[0]
    _modulus = np.abs(boundary_samples(DiskFunction(_cofactor), n).samples)
    if np.min(_modulus) <= Tolerances.MODULUS_FLOOR * max(float(np.max(_modulus)), 1.0):
        raise BoundaryZeroError(
            f"Unresolved boundary zero at angle {2 * np.pi * int(np.argmin(_modulus)) / n:.6f}; "
            f"the boundary mean of log|f| is not finite"
        )
    _mean = float(np.mean(np.log(_modulus)))
    if not np.isfinite(_mean):
        raise DomainError(f"Boundary mean of log|f| is not finite ({_mean})")
    return _mean


def is_outer(
    f: DiskFunction, n: int = DEFAULT_GRID, tol: float = 1e-8
) -> OuternessReport:
    """Jensen/Smirnov outerness test.

    Strips z^m, then compares the boundary mean of log|f*| with log|f(0)|.
    The defect is non-negative for every polynomial and zero for outer ones;
    a zero at the origin is an inner factor z^m and fails the verdict.
    """
    if np.all(np.abs(f.taylor) < Tolerances.ZERO_COEFFICIENT):
        raise DomainError("is_outer is undefined for the zero function")
    _order = int(np.flatnonzero(np.abs(f.taylor) >= Tolerances.ZERO_COEFFICIENT)[0])
    _reduced = DiskFunction(f.taylor[_order:])
    _samples = boundary_samples(_reduced, n).samples

    _roots = _boundary_roots(_reduced, _samples)
    _mean = _log_mean_without_roots(_reduced, n, _roots)
    _defect = _mean - float(np.log(abs(_reduced.taylor[0])))
    return OuternessReport(
        defect=_defect,
        zero_order_at_origin=_order,
        verdict=bool(_defect <= tol and _order == 0),
        boundary_roots=_roots,
    )
