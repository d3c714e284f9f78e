"""Analytic functions on the disk, boundary data and the FFT conversions between them."""

from dataclasses import dataclass
from typing import Callable

import numpy as np
import numpy.polynomial.polynomial as npoly
import scipy.fft

from .._base import AliasingError, DomainError, NotAnalyticError
from .._config import Tolerances, thread_count
from .._spaces import SPACE_TAGS, SpaceManager
from .._utils import decode_complex_array, encode_value, grid_angles, is_power_of_two

DEFAULT_GRID = 4096
DEFAULT_DEGREE = 256


@dataclass(frozen=True, eq=False)
class DiskFunction:
    """Finite Taylor series c_0 + c_1 z + ... + c_d z^d.

    Trailing zeros are kept; comparisons go through ``allclose``.
    """

    taylor: np.ndarray

    def __post_init__(self):
        _taylor = np.array(self.taylor, dtype=complex).reshape(-1)
        if _taylor.size == 0:
            raise ValueError("A DiskFunction needs at least one coefficient")
        _taylor.setflags(write=False)
        object.__setattr__(self, "taylor", _taylor)

    @property
    def degree(self) -> int:
        return self.taylor.size - 1

    @property
    def effective_degree(self) -> int:
        """Index of the last non-zero coefficient (0 for the zero function)."""
        _nonzero = np.flatnonzero(self.taylor)
        return int(_nonzero[-1]) if _nonzero.size else 0

    def padded(self, degree: int) -> np.ndarray:
        """Coefficients zero-padded or truncated to length degree+1."""
        _out = np.zeros(degree + 1, dtype=complex)
        _n = min(degree + 1, self.taylor.size)
        _out[:_n] = self.taylor[:_n]
        return _out

    def truncate(self, degree: int) -> "DiskFunction":
        return DiskFunction(self.padded(degree))

    def allclose(self, other: "DiskFunction", tol: float = 1e-8) -> bool:
        """Max coefficient deviation after zero-padding is at most ``tol``."""
        return max_deviation(self, other) <= tol

    def is_zero(self) -> bool:
        return not np.any(self.taylor)

    def __add__(self, other):
        if not isinstance(other, DiskFunction):
            other = DiskFunction([other])
        _d = max(self.degree, other.degree)
        return DiskFunction(self.padded(_d) + other.padded(_d))

    __radd__ = __add__

    def __neg__(self):
        return DiskFunction(-self.taylor)

    def __sub__(self, other):
        if not isinstance(other, DiskFunction):
            other = DiskFunction([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DiskFunction):
            return DiskFunction(np.convolve(self.taylor, other.taylor))
        return DiskFunction(self.taylor * complex(other))

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        return {"taylor": encode_value(self.taylor)}

    @classmethod
    def from_dict(cls, data: dict) -> "DiskFunction":
        return cls(decode_complex_array(data["taylor"]))


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """Complex samples at the N-th roots of unity exp(2 pi i j / N)."""

    samples: np.ndarray

    def __post_init__(self):
        _samples = np.array(self.samples, dtype=complex).reshape(-1)
        if not is_power_of_two(_samples.size) or _samples.size < 2:
            raise DomainError(
                f"Boundary grids have a power-of-two size >= 2, got {_samples.size}"
            )
        _samples.setflags(write=False)
        object.__setattr__(self, "samples", _samples)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def angles(self) -> np.ndarray:
        return grid_angles(self.n)

    @classmethod
    def from_callable(cls, func: Callable[[np.ndarray], np.ndarray], n: int):
        """Sample ``func(theta)`` on the N-grid of angles."""
        return cls(np.asarray(func(grid_angles(n)), dtype=complex))

    def __mul__(self, other: "BoundaryFunction") -> "BoundaryFunction":
        return BoundaryFunction(self.samples * other.samples)

    def __truediv__(self, other: "BoundaryFunction") -> "BoundaryFunction":
        return BoundaryFunction(self.samples / other.samples)

    def to_dict(self) -> dict:
        return {"n": self.n, "samples": encode_value(self.samples)}

    @classmethod
    def from_dict(cls, data: dict) -> "BoundaryFunction":
        _samples = decode_complex_array(data["samples"])
        if "n" in data and int(data["n"]) != _samples.size:
            raise ValueError(f"Declared n={data['n']} but got {_samples.size} samples")
        return cls(_samples)


@dataclass(frozen=True)
class HpNormSpec:
    """Exponent and space of a norm.

    Bergman and Dirichlet norms are the Hilbert (p = 2) coefficient norms.
    """

    p: float = 2.0
    space: str = "Hardy"

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError(f"The exponent p must be positive, got {self.p}")
        if self.space not in SPACE_TAGS:
            raise ValueError(f"Unknown space {self.space!r}")
        if SPACE_TAGS[self.space] != "Hardy" and self.p != 2:
            raise ValueError(f"The {self.space} norm is only defined here for p = 2")


def max_deviation(f: DiskFunction, g: DiskFunction) -> float:
    _d = max(f.degree, g.degree)
    return float(np.max(np.abs(f.padded(_d) - g.padded(_d))))


def _check_grid(n: int, degree: int):
    if not is_power_of_two(n) or n < 2:
        raise DomainError(f"Grid size must be a power of two, got {n}")
    if n < 2 * degree + 2:
        raise AliasingError(
            f"Grid of {n} points aliases degree {degree}; need N >= {2 * degree + 2}"
        )


def evaluate(f: DiskFunction, z: complex) -> complex:
    """Horner evaluation of f at a point of the open disk."""
    if abs(z) >= 1:
        raise DomainError(f"evaluate needs |z| < 1, got |z| = {abs(z)}")
    return complex(npoly.polyval(z, f.taylor))


def polyval(f: DiskFunction, z):
    """Horner evaluation without the disk restriction, vectorized over z."""
    return npoly.polyval(z, f.taylor)


def derivative(f: DiskFunction) -> DiskFunction:
    if f.degree == 0:
        return DiskFunction([0])
    return DiskFunction(npoly.polyder(f.taylor))


def dilate(f: DiskFunction, r: float) -> DiskFunction:
    """The function z -> f(r z)."""
    return DiskFunction(f.taylor * np.power(float(r), np.arange(f.degree + 1)))


def boundary_samples(f: DiskFunction, n: int = DEFAULT_GRID) -> BoundaryFunction:
    """Values f(exp(2 pi i j / N)) through one inverse FFT."""
    _degree = f.effective_degree
    _check_grid(n, _degree)
    _padded = np.zeros(n, dtype=complex)
    _padded[: _degree + 1] = f.taylor[: _degree + 1]
    return BoundaryFunction(n * scipy.fft.ifft(_padded, workers=thread_count()))


def ring_samples(f: DiskFunction, r: float, n: int = DEFAULT_GRID) -> BoundaryFunction:
    """Values of f on the circle of radius r <= 1."""
    if not 0 <= r <= 1:
        raise DomainError(f"Ring radius must lie in [0, 1], got {r}")
    return boundary_samples(dilate(f, r), n)


def _fourier_coefficients(samples: np.ndarray) -> np.ndarray:
    return scipy.fft.fft(samples, workers=thread_count()) / samples.size


def negative_energy_ratio(coefficients: np.ndarray) -> float:
    """Share of the energy carried by indices N/2..N-1 (negative frequencies)."""
    _energy = np.abs(coefficients) ** 2
    _total = float(np.sum(_energy))
    if _total == 0.0:
        return 0.0
    return float(np.sum(_energy[coefficients.size // 2 :]) / _total)


def project_analytic(b: BoundaryFunction, degree: int) -> tuple[DiskFunction, float]:
    """Taylor coefficients 0..degree of boundary data plus its negative-energy ratio."""
    if not 0 <= degree < b.n // 2:
        raise DomainError(f"Projection degree must satisfy d < N/2, got d={degree}, N={b.n}")
    _coefficients = _fourier_coefficients(b.samples)
    return DiskFunction(_coefficients[: degree + 1]), negative_energy_ratio(_coefficients)


def taylor_from_boundary(
    b: BoundaryFunction, degree: int, tol: float = Tolerances.ANALYTIC_RATIO
) -> DiskFunction:
    """Analytic projection of boundary samples; raises if they are not analytic."""
    _f, _ratio = project_analytic(b, degree)
    if _ratio > tol:
        raise NotAnalyticError(_ratio, tol)
    return _f


def hp_norm(f: DiskFunction, spec: HpNormSpec = HpNormSpec(), n: int = DEFAULT_GRID) -> float:
    """Hardy norms by boundary quadrature, Bergman and Dirichlet norms by coefficients."""
    _manager = SpaceManager(spec.space)
    _samples = boundary_samples(f, n).samples if _manager.needs_boundary else None
    return _manager.norm(f.taylor, spec.p, _samples)


def _real_part(u: BoundaryFunction, tol: float) -> np.ndarray:
    _scale = max(1.0, float(np.max(np.abs(u.samples))))
    _imag = float(np.max(np.abs(u.samples.imag)))
    if _imag > tol * _scale:
        raise DomainError(f"Expected real boundary data, imaginary part reaches {_imag:.3e}")
    return u.samples.real


def herglotz_transform(u: BoundaryFunction, degree: int, tol: float = 1e-12) -> DiskFunction:
    """Analytic h with Re h = Poisson extension of u and Im h(0) = 0.

    h(z) = u_0 + 2 sum_{k=1..d} u_k z^k with u_k the discrete Fourier
    coefficients of u.
    """
    if not 0 <= degree < u.n // 2:
        raise DomainError(f"Herglotz degree must satisfy d < N/2, got d={degree}, N={u.n}")
    _coefficients = _fourier_coefficients(_real_part(u, tol).astype(complex))
    _h = 2.0 * _coefficients[: degree + 1]
    _h[0] = _coefficients[0].real
    return DiskFunction(_h)


def poisson_integral(u: BoundaryFunction, z: complex, tol: float = 1e-12) -> float:
    """Discrete Poisson integral (1/N) sum u_j (1 - |z|^2) / |zeta_j - z|^2."""
    if abs(z) >= 1:
        raise DomainError(f"poisson_integral needs |z| < 1, got |z| = {abs(z)}")
    _u = _real_part(u, tol)
    _kernel = (1.0 - abs(z) ** 2) / np.abs(np.exp(1j * u.angles) - z) ** 2
    return float(np.mean(_u * _kernel))
