"""Recovery of point evaluations and weighted composition operators, isometry classification."""

from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npoly
import scipy.linalg
from rich.console import Console

from .._base import (
    BaseReport,
    DomainError,
    HypothesisViolation,
    NotBilateralContractionError,
    NotIsometricError,
    NotSelfMapError,
    VanishesOnOuterError,
    WeightVanishesError,
)
from .._config import Tolerances
from .._core import (
    DEFAULT_GRID,
    BoundaryFunction,
    DiskFunction,
    MobiusMap,
    OperatorMatrix,
    boundary_samples,
    forelli_isometry,
    forelli_weight,
    is_outer,
    mobius_derivative,
    mobius_samples,
    project_analytic,
    ring_samples,
)
from .._core._mobius import _wco_from_samples
from .._utils import decode_array, encode_value, expect_object
from ._family import (
    NonvanishingWitness,
    check_outer_nonvanishing,
    disk_minimum,
    outer_test_family,
    refine_zero,
    winding_number,
)

_console = Console(stderr=True)

DEFAULT_FAMILY_SIZE = 16


@dataclass(frozen=True, eq=False)
class CoefficientFunctional:
    """Finite-rank functional given by its values lambda_k on the monomials z^k."""

    values: np.ndarray

    def __post_init__(self):
        _values = np.array(self.values, dtype=complex).reshape(-1)
        if _values.size == 0:
            raise ValueError("A functional needs at least one value")
        _values.setflags(write=False)
        object.__setattr__(self, "values", _values)

    @property
    def degree(self) -> int:
        return self.values.size - 1

    def apply(self, f: DiskFunction) -> complex:
        return complex(np.dot(self.values, f.padded(self.degree)))

    @classmethod
    def point_evaluation(cls, c: complex, w: complex, degree: int):
        """lambda_k = c w^k, the functional f -> c f(w)."""
        return cls(complex(c) * np.power(complex(w), np.arange(degree + 1)))

    def to_dict(self) -> dict:
        return {"functional": {"lambda": encode_value(self.values)}}

    @classmethod
    def from_dict(cls, data: dict) -> "CoefficientFunctional":
        _data = expect_object(data, "the functional")
        _data = expect_object(_data.get("functional", _data), "the functional")
        return cls(decode_array(_data["lambda"], 1))


@dataclass
class RecoveryReport(BaseReport):
    c: complex
    w: complex
    residual: float
    verdict: bool


@dataclass
class FunctionalWitness(BaseReport):
    """Outer g with Lambda(g) (nearly) zero."""

    g: DiskFunction
    value: complex
    construction: str


@dataclass
class WcoReport(BaseReport):
    psi: DiskFunction
    phi: DiskFunction
    residual: float
    selfmap_margin: float
    min_weight_modulus: float
    verdict: bool


@dataclass
class InvertibilityReport(BaseReport):
    min_weight_modulus: float
    max_weight_modulus: float
    mobius: MobiusMap | None
    mobius_fit_residual: float
    condition_number: float
    inverse_symbol_margin: float
    inverse_composition_residual: float


@dataclass
class ForelliCertificate(BaseReport):
    w: complex
    c_phi: complex
    c: complex
    fit_residual: float
    operator_residual: float
    unimodularity_defect: float


@dataclass
class CounterexampleReport(BaseReport):
    reason: str
    witness: NonvanishingWitness | None = None


def recover_functional(functional: CoefficientFunctional, tol: float = 1e-8) -> RecoveryReport:
    """Write Lambda as f -> c f(w): c = Lambda(1), w = Lambda(z)/Lambda(1)."""
    if functional.degree < 1:
        raise DomainError("Recovering a functional needs its values on 1 and z")
    _values = functional.values
    c = complex(_values[0])
    if abs(c) <= 1e-14 * float(np.max(np.abs(_values))) or c == 0:
        raise VanishesOnOuterError(
            "The functional vanishes on the outer function 1", witness=DiskFunction([1.0])
        )
    w = complex(_values[1]) / c
    if abs(w) >= 1:
        raise VanishesOnOuterError(
            f"The functional vanishes on some outer z - lambda (lambda = {w:.6g}, |lambda| >= 1)",
            witness=DiskFunction([-w, 1.0]),
        )
    _model = c * np.power(w, np.arange(functional.degree + 1))
    _residual = float(np.max(np.abs(_values - _model))) / max(1.0, abs(c))
    return RecoveryReport(c, w, _residual, bool(_residual <= tol))


def difference_quotient_check(
    functional: CoefficientFunctional, f: DiskFunction, tol: float = 1e-8
) -> float:
    """|Lambda(f) - c f(w)| through f = f(w) + (z - w) k.

    k is the synthetic-division quotient, exact for polynomials.
    """
    _report = recover_functional(functional, tol)
    c, w = _report.c, _report.w
    _fw = complex(npoly.polyval(w, f.taylor))
    _k, _remainder = npoly.polydiv(f.taylor - np.eye(1, f.degree + 1)[0] * _fw, [-w, 1.0])
    if np.max(np.abs(_remainder)) > 1e-10 * max(1.0, float(np.max(np.abs(f.taylor)))):
        raise DomainError(f"Synthetic division left a remainder {_remainder}")
    _annihilated = functional.apply(DiskFunction([-w, 1.0]) * DiskFunction(_k))
    _residual = abs(functional.apply(f) - c * _fw)
    if _residual > tol:
        _console.log(
            f"[yellow]Lambda(f) - c f(w) = {_residual:.3e}; "
            f"Lambda((z - w) k) = {abs(_annihilated):.3e}[/yellow]"
        )
    return float(_residual)


def explain_functional(
    functional: CoefficientFunctional,
    family: list[DiskFunction],
    tol: float = 1e-8,
    n: int = DEFAULT_GRID,
) -> FunctionalWitness | None:
    """Look for an outer g with Lambda(g) = 0.

    Tries 1, z - w for |w| >= 1, the family members, and then the
    combinations Lambda(g2) g1 - Lambda(g1) g2 that pass the outerness test.
    """
    try:
        recover_functional(functional, tol)
    except VanishesOnOuterError as e:
        return FunctionalWitness(e.witness, functional.apply(e.witness), "exact")

    _scale = float(np.linalg.norm(functional.values))
    _values = [functional.apply(g) for g in family]
    for g, _value in zip(family, _values):
        if abs(_value) <= tol * _scale * float(np.linalg.norm(g.taylor)):
            return FunctionalWitness(g, _value, "family member")

    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            g = _values[j] * family[i] - _values[i] * family[j]
            if np.max(np.abs(g.taylor)) < Tolerances.ZERO_COEFFICIENT:
                continue
            if g.effective_degree >= n // 2:
                continue
            if is_outer(g, n, tol).verdict:
                return FunctionalWitness(g, functional.apply(g), f"pair ({i}, {j})")
    _console.log("[yellow]No witness found at resolution[/yellow]")
    return None


def _locate_weight_zero(psi: DiskFunction, tol: float, n: int):
    _minimum, _where = disk_minimum(psi, n=n)
    if _minimum < tol:
        return _minimum, _where
    if winding_number(psi, Tolerances.WEIGHT_RADIUS, n):
        _z = refine_zero(psi, _where, n)
        return float(abs(npoly.polyval(_z, psi.taylor))), _z
    return _minimum, None


def recover_operator(T: OperatorMatrix, tol: float = 1e-8, n: int = DEFAULT_GRID) -> WcoReport:
    """Write T as f -> psi (f o phi) with psi = T1 and phi = T(z)/psi."""
    _d = T.degree
    if _d < 1:
        raise DomainError("Recovering an operator needs its values on 1 and z")
    psi = T.column(0)
    _minimum, _zero = _locate_weight_zero(psi, tol, n)
    if _zero is not None:
        raise WeightVanishesError(
            f"The weight psi = T1 vanishes near z = {_zero:.6g} (|psi| = {_minimum:.3e})",
            witness=_zero,
        )

    _psi = boundary_samples(psi, n)
    phi, _ratio = project_analytic(boundary_samples(T.column(1), n) / _psi, _d)
    if _ratio > Tolerances.ANALYTIC_RATIO:
        _console.log(f"[yellow]T(z)/T(1) is not analytic at resolution (ratio {_ratio:.2e})[/yellow]")
    _phi = boundary_samples(phi, n).samples
    _margin = 1.0 - float(np.max(np.abs(_phi)))
    if _margin < -tol:
        raise NotSelfMapError(
            f"phi = T(z)/T(1) is not a self-map of the disk: max |phi*| = {1 - _margin:.9f}",
            witness=_margin,
        )

    _rebuilt = _wco_from_samples(_psi.samples, _phi, _d)
    _columns = _d // 2 + 1
    _residual = float(
        np.max(np.abs(T.entries[:, :_columns] - _rebuilt.entries[:, :_columns]))
    )
    return WcoReport(
        psi=psi,
        phi=phi,
        residual=_residual,
        selfmap_margin=_margin,
        min_weight_modulus=_minimum,
        verdict=bool(_residual <= tol and _margin >= -tol and _minimum > tol),
    )


def fit_mobius(phi: DiskFunction, n: int = DEFAULT_GRID):
    """Automorphism with the same phi(0) and arg phi'(0), and its deviation from phi.

    The deviation is the larger of the grid sup-norm gap and the mismatch of
    the derivatives at the origin.
    """
    _phi0 = complex(phi.taylor[0])
    _slope = complex(phi.taylor[1]) if phi.degree >= 1 else 0j
    if _slope == 0:
        return None, np.inf
    c = _slope / abs(_slope)
    w = -_phi0 / c
    if abs(w) >= 1:
        return None, np.inf
    _mobius = MobiusMap(w, c)
    _residual = max(
        float(np.max(np.abs(mobius_samples(_mobius, n).samples - boundary_samples(phi, n).samples))),
        abs(mobius_derivative(_mobius, 0.0) - _slope),
    )
    return _mobius, _residual


def weight_quotient(psi_t: DiskFunction, psi_s, n: int = DEFAULT_GRID, degree: int | None = None):
    """Projection of psi_T / psi_S; psi_S may be given by boundary samples."""
    if not isinstance(psi_s, BoundaryFunction):
        psi_s = boundary_samples(psi_s, n)
    _degree = psi_t.degree if degree is None else degree
    return project_analytic(boundary_samples(psi_t, psi_s.n) / psi_s, _degree)[0]


def quotient_constancy_check(h: DiskFunction, tol: float = 1e-8, n: int = DEFAULT_GRID) -> complex:
    """Return the unimodular constant h if both h and 1/h are contractive multipliers."""
    _modulus = np.abs(boundary_samples(h, n).samples)
    _sup = float(np.max(_modulus))
    _inverse_sup = np.inf if np.min(_modulus) == 0 else float(np.max(1.0 / _modulus))
    if _sup > 1 + tol or _inverse_sup > 1 + tol:
        raise NotBilateralContractionError(
            f"Not a bilateral contraction: sup|h| = {_sup:.9f}, sup|1/h| = {_inverse_sup:.9f}"
        )
    _value = complex(h.taylor[0])
    if abs(abs(_value) - 1) > tol:
        raise NotBilateralContractionError(f"h(0) = {_value} is not unimodular")
    return _value


def invertibility_margins(
    T: OperatorMatrix, tol: float = 1e-8, n: int = DEFAULT_GRID, block: int | None = None
) -> InvertibilityReport:
    """Finite-truncation margins for a surjective weighted composition operator.

    The inverse symbol theta solves T theta = z psi; for an invertible operator
    theta o phi = z and |theta| < 1 on the disk. Columns psi phi^k past the
    leading block of size d//4 + 1 are corrupted by truncation, so theta is
    solved (in least squares over all rows) on that block only, and the
    condition number is the block's.
    """
    _report = recover_operator(T, tol, n)
    _max_weight = float(np.max(np.abs(ring_samples(_report.psi, Tolerances.WEIGHT_RADIUS, n).samples)))
    _mobius, _fit = fit_mobius(_report.phi, n)

    _rhs = np.zeros(T.degree + 1, dtype=complex)
    _rhs[1:] = _report.psi.taylor[: T.degree]
    _block = T.degree // 4 + 1 if block is None else block
    _leading = T.entries[:, :_block]
    _theta = DiskFunction(scipy.linalg.lstsq(_leading, _rhs)[0])
    _theta_margin = 1.0 - float(np.max(np.abs(boundary_samples(_theta, n).samples)))
    _z = 0.5 * np.exp(2j * np.pi * np.arange(64) / 64)
    _composition = npoly.polyval(npoly.polyval(_z, _report.phi.taylor), _theta.taylor)

    return InvertibilityReport(
        min_weight_modulus=_report.min_weight_modulus,
        max_weight_modulus=_max_weight,
        mobius=_mobius,
        mobius_fit_residual=_fit,
        condition_number=float(np.linalg.cond(_leading)),
        inverse_symbol_margin=_theta_margin,
        inverse_composition_residual=float(np.max(np.abs(_composition - _z))),
    )


def swap_unitary(degree: int) -> OperatorMatrix:
    """The H^2 unitary exchanging 1 and z and fixing z^k for k >= 2."""
    if degree < 1:
        raise DomainError("The swap needs degree >= 1")
    _order = np.arange(degree + 1)
    _order[[0, 1]] = [1, 0]
    return OperatorMatrix(np.eye(degree + 1, dtype=complex)[_order])


def isometry_deviation(T: OperatorMatrix, block: int) -> float:
    """Spectral norm of (T*T - I) on the top-left block."""
    _gram = (T.entries.conj().T @ T.entries)[:block, :block]
    return float(np.linalg.norm(_gram - np.eye(block), 2))


def classify_isometry(
    T: OperatorMatrix,
    tol: float = 1e-8,
    family: list[DiskFunction] | None = None,
    n: int = DEFAULT_GRID,
    block: int | None = None,
    seed: int = 42,
) -> ForelliCertificate | CounterexampleReport:
    """Decide whether an H^2 isometry is c (phi')^(1/2) (f o phi) with phi an automorphism.

    Leakage of phi^k past the truncation grows with k, so the isometry test and
    the Forelli comparison use the top-left block of size d//4 + 1 by default.
    """
    _d = T.degree
    _block = _d // 4 + 1 if block is None else block
    _deviation = isometry_deviation(T, _block)
    if _deviation > tol:
        raise NotIsometricError(
            f"T is not isometric on the leading {_block} monomials: ||T*T - I|| = {_deviation:.3e}",
            witness=_deviation,
        )

    if family is None:
        family = outer_test_family(DEFAULT_FAMILY_SIZE, seed, _d, n)
    _witness = check_outer_nonvanishing(T, family, tol=tol, n=n)
    if _witness is not None:
        _console.log(f"[yellow]T maps an outer function to one vanishing at {_witness.z0:.6g}[/yellow]")
        return CounterexampleReport("T maps an outer function to a function with a zero in the disk", _witness)

    try:
        _report = recover_operator(T, tol, n)
    except HypothesisViolation as e:
        return CounterexampleReport(str(e))
    _mobius, _fit = fit_mobius(_report.phi, n)
    if _mobius is None or _fit > tol:
        return CounterexampleReport(f"phi is not a disk automorphism (fit residual {_fit:.3e})")

    try:
        quotient_constancy_check(
            weight_quotient(_report.psi, forelli_weight(_mobius, 1.0, 2.0, n), n, _d), tol, n
        )
    except NotBilateralContractionError as e:
        return CounterexampleReport(f"T S^-1 is not a unimodular constant: {e}")

    c = complex(_report.psi.taylor[0]) / np.sqrt(mobius_derivative(_mobius, 0.0))
    _unimodularity = abs(abs(c) - 1)
    if _unimodularity > tol:
        return CounterexampleReport(f"|c| = {abs(c):.12f} is not 1")
    _model = forelli_isometry(_mobius, c / abs(c), 2.0, _d, n)
    _operator_residual = float(np.max(np.abs(T.block(_block) - _model.block(_block))))
    if _operator_residual > tol:
        return CounterexampleReport(f"T differs from the fitted Forelli isometry by {_operator_residual:.3e}")

    _console.log(f"[green]Forelli isometry: w = {_mobius.w:.6g}, c_phi = {_mobius.c:.6g}, c = {c:.6g}[/green]")
    return ForelliCertificate(
        w=_mobius.w,
        c_phi=_mobius.c,
        c=c,
        fit_residual=_fit,
        operator_residual=_operator_residual,
        unimodularity_defect=_unimodularity,
    )
