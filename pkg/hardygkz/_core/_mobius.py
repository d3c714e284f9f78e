"""Disk automorphisms, weighted composition matrices and shift multiplier norms."""

from dataclasses import dataclass

import numpy as np
import scipy.fft
from rich.console import Console

from .._base import BaseReport, DomainError, NotSelfMapError
from .._config import Tolerances, thread_count
from .._spaces import SpaceManager
from .._utils import decode_complex, decode_complex_array, encode_complex, encode_value, grid_points
from ._function import (
    DEFAULT_DEGREE,
    DEFAULT_GRID,
    BoundaryFunction,
    DiskFunction,
    boundary_samples,
    project_analytic,
)

_console = Console(stderr=True)


@dataclass(frozen=True)
class MobiusMap:
    """phi(z) = c (z - w) / (1 - conj(w) z) with |w| < 1 and |c| = 1."""

    w: complex = 0.0
    c: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "w", complex(self.w))
        object.__setattr__(self, "c", complex(self.c))
        if abs(self.w) >= 1:
            raise DomainError(f"Mobius parameter w must lie in the open disk, got |w| = {abs(self.w)}")
        if abs(abs(self.c) - 1) > Tolerances.UNIT_MODULUS:
            raise DomainError(f"Mobius rotation c must be unimodular, got |c| = {abs(self.c)}")

    def to_dict(self) -> dict:
        return {"w": encode_complex(self.w), "c": encode_complex(self.c)}

    @classmethod
    def from_dict(cls, data: dict) -> "MobiusMap":
        return cls(decode_complex(data.get("w", 0.0)), decode_complex(data.get("c", 1.0)))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Truncated matrix of a linear map; column k holds the coefficients of T(z^k)."""

    entries: np.ndarray

    def __post_init__(self):
        _entries = np.array(self.entries, dtype=complex)
        if _entries.ndim != 2 or _entries.shape[0] != _entries.shape[1]:
            raise ValueError(f"Operator matrices are square, got shape {_entries.shape}")
        _entries.setflags(write=False)
        object.__setattr__(self, "entries", _entries)

    @property
    def degree(self) -> int:
        return self.entries.shape[0] - 1

    def apply(self, f: DiskFunction) -> DiskFunction:
        return DiskFunction(self.entries @ f.padded(self.degree))

    def column(self, k: int) -> DiskFunction:
        return DiskFunction(self.entries[:, k])

    def block(self, size: int) -> np.ndarray:
        return self.entries[:size, :size]

    def to_dict(self) -> dict:
        return {"operator": encode_value(self.entries)}

    @classmethod
    def from_dict(cls, data: dict) -> "OperatorMatrix":
        return cls(decode_complex_array(data["operator"]))


@dataclass
class ShiftNormRow(BaseReport):
    n: int
    norm: float
    nth_root: float


def mobius_eval(m: MobiusMap, z):
    """Evaluate the automorphism on the closed disk (vectorized)."""
    _z = np.asarray(z, dtype=complex)
    if np.any(np.abs(_z) > 1 + 1e-12):
        raise DomainError("mobius_eval is defined on the closed unit disk")
    _value = m.c * (_z - m.w) / (1 - np.conj(m.w) * _z)
    return complex(_value) if _value.ndim == 0 else _value


def mobius_derivative(m: MobiusMap, z):
    """c (1 - |w|^2) / (1 - conj(w) z)^2, the conformal factor of the automorphism."""
    _z = np.asarray(z, dtype=complex)
    _value = m.c * (1 - abs(m.w) ** 2) / (1 - np.conj(m.w) * _z) ** 2
    return complex(_value) if _value.ndim == 0 else _value


def mobius_inverse(m: MobiusMap) -> MobiusMap:
    """The inverse automorphism: w' = -c w, c' = conj(c)."""
    return MobiusMap(-m.c * m.w, np.conj(m.c))


def mobius_compose(outer: MobiusMap, inner: MobiusMap) -> MobiusMap:
    """Parameters of outer o inner."""
    _w = complex(mobius_eval(mobius_inverse(inner), outer.w))
    # read the rotation off a boundary point at distance >= 1 from w
    _zeta = -_w / abs(_w) if _w != 0 else 1.0
    _value = mobius_eval(outer, mobius_eval(inner, _zeta))
    _c = _value * (1 - np.conj(_w) * _zeta) / (_zeta - _w)
    return MobiusMap(_w, _c / abs(_c))


def mobius_samples(m: MobiusMap, n: int = DEFAULT_GRID) -> BoundaryFunction:
    return BoundaryFunction(mobius_eval(m, grid_points(n)))


def mobius_taylor(m: MobiusMap, degree: int = DEFAULT_DEGREE, n: int = DEFAULT_GRID) -> DiskFunction:
    return project_analytic(mobius_samples(m, n), degree)[0]


def _wco_from_samples(psi: np.ndarray, phi: np.ndarray, degree: int) -> OperatorMatrix:
    """Columns psi * phi^k built by repeated boundary multiplication, one batched FFT."""
    _n = psi.size
    _powers = np.empty((degree + 1, _n), dtype=complex)
    _powers[0] = psi
    for k in range(1, degree + 1):
        _powers[k] = _powers[k - 1] * phi
    _coefficients = scipy.fft.fft(_powers, axis=1, workers=thread_count()) / _n
    return OperatorMatrix(_coefficients[:, : degree + 1].T)


def wco_matrix(
    psi: DiskFunction,
    phi: DiskFunction,
    degree: int = DEFAULT_DEGREE,
    n: int = DEFAULT_GRID,
    margin: float = Tolerances.SELFMAP_MARGIN,
) -> OperatorMatrix:
    """Matrix of f -> psi (f o phi) on polynomials of degree <= ``degree``.

    phi must map the closed disk into itself up to ``margin``; maps touching
    the circle are accepted with a warning since their powers leak past the
    truncation.
    """
    if degree < 0 or n < 2 * degree + 2:
        raise DomainError(f"Degree {degree} does not fit a grid of {n} points")
    _phi = boundary_samples(phi, n).samples
    _max = float(np.max(np.abs(_phi)))
    if _max > 1 + margin:
        raise NotSelfMapError(
            f"phi is not a self-map of the disk: max |phi*| = {_max:.12f} > 1 + {margin:.0e}",
            witness=_max,
        )
    if _max >= 1 - margin:
        _console.log(f"[yellow]phi touches the unit circle (max |phi*| = {_max:.12f}); high columns are truncated[/yellow]")
    return _wco_from_samples(boundary_samples(psi, n).samples, _phi, degree)


def forelli_weight(m: MobiusMap, c: complex, p: float, n: int = DEFAULT_GRID) -> BoundaryFunction:
    """Boundary values of c (phi')^(1/p) on the principal branch.

    phi' = c_phi (1 - |w|^2) (1 - conj(w) z)^-2 and Re(1 - conj(w) z) > 0 on
    the closed disk, so exp((1/p)(Log(c_phi (1-|w|^2)) - 2 Log(1 - conj(w) z)))
    is continuous and equals the principal root at z = 0.
    """
    if not p > 0:
        raise DomainError(f"The exponent p must be positive, got {p}")
    if abs(abs(complex(c)) - 1) > Tolerances.UNIT_MODULUS:
        raise DomainError(f"The Forelli constant must be unimodular, got |c| = {abs(c)}")
    if np.isinf(p):
        return BoundaryFunction(np.full(n, complex(c)))
    _zeta = grid_points(n)
    _log = np.log(m.c * (1 - abs(m.w) ** 2)) - 2 * np.log(1 - np.conj(m.w) * _zeta)
    return BoundaryFunction(complex(c) * np.exp(_log / p))


def forelli_isometry(
    m: MobiusMap,
    c: complex = 1.0,
    p: float = 2.0,
    degree: int = DEFAULT_DEGREE,
    n: int = DEFAULT_GRID,
) -> OperatorMatrix:
    """Matrix of f -> c (phi')^(1/p) (f o phi), a surjective H^p isometry."""
    if degree < 0 or n < 2 * degree + 2:
        raise DomainError(f"Degree {degree} does not fit a grid of {n} points")
    _psi = forelli_weight(m, c, p, n).samples
    return _wco_from_samples(_psi, mobius_samples(m, n).samples, degree)


def shift_multiplier_norm(space: str, n: int, degree: int = DEFAULT_DEGREE) -> float:
    """Norm of multiplication by z^n on the truncated Hardy2, Bergman2 or Dirichlet space."""
    if not 0 <= n <= degree:
        raise DomainError(f"Shift power must satisfy 0 <= n <= d, got n={n}, d={degree}")
    return SpaceManager(space).shift_norm(n, degree)


def shift_norm_trend(space: str, n_max: int, degree: int = DEFAULT_DEGREE) -> list[ShiftNormRow]:
    """Rows (n, ||u^n||, ||u^n||^(1/n)) for n = 1..n_max; the roots tend to the spectral radius 1."""
    _rows = []
    for n in range(1, n_max + 1):
        _norm = shift_multiplier_norm(space, n, degree)
        _rows.append(ShiftNormRow(n, _norm, _norm ** (1.0 / n)))
    return _rows
