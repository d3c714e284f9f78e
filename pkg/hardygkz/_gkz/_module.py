"""Characters of finite-dimensional algebras acting on modules."""

from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.linalg
from rich.console import Console

from .._base import BaseReport, DomainError, NonvanishingViolation, NormalizationError
from .._config import Tolerances
from .._utils import decode_array, encode_value, expect_object

_console = Console(stderr=True)

MEMBERSHIP_TAGS = ("all-coordinates-nonzero", "user-list")


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """Unital algebra with basis e_0..e_{n-1}: e_i e_j = sum_k structure[i, j, k] e_k."""

    structure: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        _structure = np.array(self.structure, dtype=complex)
        _unit = np.array(self.unit, dtype=complex).reshape(-1)
        _n = _unit.size
        if _n == 0 or _structure.shape != (_n, _n, _n):
            raise ValueError(f"Structure tensor must be {_n}x{_n}x{_n}, got {_structure.shape}")
        _structure.setflags(write=False)
        _unit.setflags(write=False)
        object.__setattr__(self, "structure", _structure)
        object.__setattr__(self, "unit", _unit)

    @property
    def dim(self) -> int:
        return self.unit.size

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.structure)

    def left_regular(self, a: np.ndarray) -> np.ndarray:
        """Matrix of b -> a b in the basis."""
        return np.einsum("i,ijk->kj", a, self.structure)

    def is_invertible(self, a: np.ndarray) -> bool:
        return bool(np.linalg.cond(self.left_regular(a)) < Tolerances.INVERTIBILITY_CONDITION)

    @classmethod
    def diagonal(cls, n: int) -> "FiniteAlgebra":
        """C^n with the coordinatewise product."""
        _structure = np.zeros((n, n, n))
        _structure[np.arange(n), np.arange(n), np.arange(n)] = 1.0
        return cls(_structure, np.ones(n))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "structure": encode_value(self.structure), "unit": encode_value(self.unit)}

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteAlgebra":
        expect_object(data, "the algebra")
        _algebra = cls(decode_array(data["structure"], 3), decode_array(data["unit"], 1))
        if "dim" in data and int(data["dim"]) != _algebra.dim:
            raise ValueError(f"Declared dim={data['dim']} but the unit has {_algebra.dim} entries")
        return _algebra


@dataclass(frozen=True, eq=False)
class ModuleAction:
    """Left module C^m: the algebra element sum a_i e_i acts as sum a_i action[i]."""

    action: np.ndarray

    def __post_init__(self):
        _action = np.array(self.action, dtype=complex)
        if _action.ndim != 3 or _action.shape[1] != _action.shape[2]:
            raise ValueError(f"Module actions are a stack of square matrices, got {_action.shape}")
        _action.setflags(write=False)
        object.__setattr__(self, "action", _action)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def matrix(self, a: np.ndarray) -> np.ndarray:
        return np.einsum("i,ipq->pq", a, self.action)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "action": encode_value(self.action)}

    @classmethod
    def from_dict(cls, data: dict) -> "ModuleAction":
        expect_object(data, "the module")
        _module = cls(decode_array(data["action"], 3))
        if "dim" in data and int(data["dim"]) != _module.dim:
            raise ValueError(f"Declared dim={data['dim']} but the action matrices are {_module.dim}x{_module.dim}")
        return _module


@dataclass(frozen=True, eq=False)
class GeneratingSet:
    """Declared samples of S and how membership in S is described."""

    elements: np.ndarray
    tag: Literal["all-coordinates-nonzero", "user-list"] = "user-list"

    def __post_init__(self):
        _elements = np.atleast_2d(np.array(self.elements, dtype=complex))
        if _elements.size == 0:
            raise ValueError("S must be non-empty")
        if self.tag not in MEMBERSHIP_TAGS:
            raise ValueError(f"Unknown membership tag {self.tag!r}, expected one of {MEMBERSHIP_TAGS}")
        _elements.setflags(write=False)
        object.__setattr__(self, "elements", _elements)

    def contains(self, m: np.ndarray, tol: float = 1e-12) -> bool | None:
        """Membership test; ``None`` when S is only known by its samples."""
        if self.tag == "all-coordinates-nonzero":
            return bool(np.all(np.abs(m) > tol))
        return None

    def to_dict(self) -> dict:
        return {"elements": encode_value(self.elements), "tag": self.tag}

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratingSet":
        _data = expect_object(data, "the generating set")
        return cls(decode_array(_data["elements"], 2), _data.get("tag", "user-list"))


@dataclass
class LawCheck(BaseReport):
    ok: bool
    law: str | None = None
    location: tuple | None = None
    magnitude: float = 0.0


@dataclass
class CharacterReport(BaseReport):
    chi: np.ndarray
    max_s_deviation: float
    multiplicativity_defect: float
    equivariance_defect: float
    verdict: bool
    samples: int = 1


@dataclass
class ClosureReport(BaseReport):
    """Checks of the generating-set conditions restricted to the declared samples."""

    span_rank: int
    module_dim: int
    closure_checked: int
    closure_failures: int
    pairs_checked: int
    pairs_found: int
    note: str = "finite proxy: only the declared samples of S were examined"


@dataclass
class ScalarGkzReport(BaseReport):
    ok: bool
    label: str
    invertible_samples: int
    counterexample: np.ndarray | None = None
    violating_pair: tuple | None = None
    defect: float = 0.0


@dataclass
class ModuleInstance(BaseReport):
    algebra: FiniteAlgebra
    module: ModuleAction
    generating_set: GeneratingSet
    functional: np.ndarray
    character: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra.to_dict(),
            "module": self.module.to_dict(),
            "S": self.generating_set.to_dict(),
            "functional": encode_value(self.functional),
        }


def verify_algebra(A: FiniteAlgebra, tol: float = 1e-12) -> LawCheck:
    """Unit laws, then associativity, exhaustively over the basis."""
    _n = A.dim
    _identity = np.eye(_n)
    _left = np.einsum("j,jik->ik", A.unit, A.structure)
    _right = np.einsum("j,ijk->ik", A.unit, A.structure)
    for _side, _products in (("left unit", _left), ("right unit", _right)):
        _deviation = np.max(np.abs(_products - _identity), axis=1)
        i = int(np.argmax(_deviation))
        if _deviation[i] > tol:
            _location = ("unit", f"e_{i}") if _side == "left unit" else (f"e_{i}", "unit")
            return LawCheck(False, _side, _location, float(_deviation[i]))

    _first = np.einsum("ijl,lkm->ijkm", A.structure, A.structure)
    _second = np.einsum("jkl,ilm->ijkm", A.structure, A.structure)
    _deviation = np.max(np.abs(_first - _second), axis=3)
    i, j, k = np.unravel_index(int(np.argmax(_deviation)), _deviation.shape)
    if _deviation[i, j, k] > tol:
        return LawCheck(False, "associativity", (f"e_{i}", f"e_{j}", f"e_{k}"), float(_deviation[i, j, k]))
    return LawCheck(True)


def verify_module(A: FiniteAlgebra, act: ModuleAction, tol: float = 1e-12) -> LawCheck:
    """action(unit) = I and action(e_i e_j) = action(e_i) action(e_j)."""
    if act.action.shape[0] != A.dim:
        raise DomainError(f"The module has {act.action.shape[0]} action matrices for an algebra of dim {A.dim}")
    _unit = float(np.max(np.abs(act.matrix(A.unit) - np.eye(act.dim))))
    if _unit > tol:
        return LawCheck(False, "unit action", ("unit",), _unit)
    _products = np.einsum("ijk,kpq->ijpq", A.structure, act.action)
    _composed = np.einsum("ipr,jrq->ijpq", act.action, act.action)
    _deviation = np.max(np.abs(_products - _composed), axis=(2, 3))
    i, j = np.unravel_index(int(np.argmax(_deviation)), _deviation.shape)
    if _deviation[i, j] > tol:
        return LawCheck(False, "multiplicativity", (f"e_{i}", f"e_{j}"), float(_deviation[i, j]))
    return LawCheck(True)


def regular_module(A: FiniteAlgebra) -> ModuleAction:
    """A acting on itself by left multiplication."""
    return ModuleAction(np.stack([A.left_regular(e) for e in np.eye(A.dim)]))


def _check_nonvanishing(S: GeneratingSet, functional: np.ndarray, tol: float) -> np.ndarray:
    _values = S.elements @ functional
    _scale = np.linalg.norm(functional) * np.linalg.norm(S.elements, axis=1)
    for s, _value, _bound in zip(S.elements, _values, _scale):
        if abs(_value) <= tol * _bound:
            raise NonvanishingViolation(
                f"The functional vanishes on the element s = {np.round(s, 12).tolist()} of S",
                witness=s,
            )
    return _values


def extract_character(
    A: FiniteAlgebra,
    act: ModuleAction,
    S: GeneratingSet,
    functional: np.ndarray,
    tol: float = 1e-10,
) -> CharacterReport:
    """chi(a) = Lambda(a s) / Lambda(s), checked for independence of s and Lambda(a m) = chi(a) Lambda(m)."""
    functional = np.asarray(functional, dtype=complex)
    if functional.size != act.dim or S.elements.shape[1] != act.dim:
        raise DomainError(f"Functional and elements of S must live in C^{act.dim}")
    _values = _check_nonvanishing(S, functional, tol)

    # chi_s[s, i] = Lambda(action(e_i) s) / Lambda(s)
    _chi_s = np.einsum("p,ipq,sq->si", functional, act.action, S.elements) / _values[:, None]
    _max_s = float(np.max(np.abs(_chi_s - _chi_s[0]))) if len(_chi_s) > 1 else 0.0
    chi = _chi_s[0]

    _products = np.einsum("ijk,k->ij", A.structure, chi)
    _multiplicativity = float(np.max(np.abs(_products - np.outer(chi, chi))))
    _lhs = np.einsum("p,ipq->iq", functional, act.action)
    _equivariance = float(np.max(np.abs(_lhs - np.outer(chi, functional))))

    _unit = abs(complex(np.dot(chi, A.unit)) - 1)
    _verdict = max(_max_s, _multiplicativity, _equivariance, _unit) <= tol
    if not _verdict:
        _console.log(
            f"[yellow]Character defects: s-deviation {_max_s:.2e}, "
            f"multiplicativity {_multiplicativity:.2e}, Lambda(am) - chi(a)Lambda(m) {_equivariance:.2e}[/yellow]"
        )
    return CharacterReport(chi, _max_s, _multiplicativity, _equivariance, bool(_verdict), len(_chi_s))


def _random_elements(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    return rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))


def check_generating_set(
    A: FiniteAlgebra,
    act: ModuleAction,
    S: GeneratingSet,
    trials: int = 64,
    seed: int = 42,
    tol: float = 1e-10,
) -> ClosureReport:
    """Sample generation, closure under invertibles and the pairing a1 s1 = a2 s2 on the samples."""
    rng = np.random.default_rng(seed)
    # columns action(e_i) s for every sample s
    _orbits = np.einsum("ipq,sq->spi", act.action, S.elements)
    _span = int(np.linalg.matrix_rank(np.concatenate(list(_orbits), axis=1), tol=tol))

    _checked = _failures = 0
    if S.contains(S.elements[0]) is not None:
        for a in _random_elements(rng, trials, A.dim):
            if not A.is_invertible(a):
                continue
            s = S.elements[_checked % len(S.elements)]
            _checked += 1
            if not S.contains(act.matrix(a) @ s):
                _failures += 1

    _pairs = _found = 0
    for i in range(len(S.elements)):
        for j in range(i + 1, len(S.elements)):
            _pairs += 1
            _kernel = scipy.linalg.null_space(np.concatenate([_orbits[i], -_orbits[j]], axis=1), rcond=tol)
            if _kernel.shape[1] == 0:
                continue
            _combination = _kernel @ _random_elements(rng, 1, _kernel.shape[1])[0]
            _a1, _a2 = _combination[: A.dim], _combination[A.dim :]
            if A.is_invertible(_a1) and A.is_invertible(_a2):
                _found += 1
    return ClosureReport(_span, act.dim, _checked, _failures, _pairs, _found)


def _first_coordinate_one(v: np.ndarray) -> np.ndarray:
    _index = int(np.flatnonzero(np.abs(v) > 1e-12)[0])
    _normalized = v / v[_index]
    _normalized[np.abs(_normalized) < 1e-12] = 0
    return _normalized


def scalar_gkz_check(
    A: FiniteAlgebra,
    functional: np.ndarray,
    trials: int = 1000,
    seed: int = 42,
    tol: float = 1e-10,
) -> ScalarGkzReport:
    """One-sided numerical check that a functional nonvanishing on invertibles is a character.

    The kernel of Lambda is searched for invertible elements first, then random
    samples are drawn; passing only means consistency at the sample size.
    """
    functional = np.asarray(functional, dtype=complex).reshape(-1)
    if functional.size != A.dim:
        raise DomainError(f"The functional must have {A.dim} entries, got {functional.size}")
    _at_unit = complex(np.dot(functional, A.unit))
    if abs(_at_unit - 1) > tol:
        raise NormalizationError(f"Lambda(1) must be 1, got {_at_unit}", witness=_at_unit)

    rng = np.random.default_rng(seed)
    _kernel = scipy.linalg.null_space(functional[None, :])
    _candidates = list(_kernel.T)
    if _kernel.shape[1] > 1:
        _candidates.extend(_random_elements(rng, trials, _kernel.shape[1]) @ _kernel.T)
    for a in _candidates:
        if A.is_invertible(a):
            a = _first_coordinate_one(a)
            _console.log(f"[yellow]Lambda vanishes on the invertible element {np.round(a, 12).tolist()}[/yellow]")
            return ScalarGkzReport(False, "vanishes on an invertible element", 0, counterexample=a)

    _invertible = 0
    for a in _random_elements(rng, trials, A.dim):
        if not A.is_invertible(a):
            continue
        _invertible += 1
        _value = abs(np.dot(functional, a))
        if _value <= tol * np.linalg.norm(a):
            return ScalarGkzReport(False, "vanishes on an invertible element", _invertible, counterexample=a)

    _products = np.einsum("ijk,k->ij", A.structure, functional)
    _defects = np.abs(_products - np.outer(functional, functional))
    i, j = np.unravel_index(int(np.argmax(_defects)), _defects.shape)
    if _defects[i, j] > tol:
        return ScalarGkzReport(
            False, "not multiplicative", _invertible, violating_pair=(f"e_{i}", f"e_{j}"), defect=float(_defects[i, j])
        )
    return ScalarGkzReport(True, "consistent with GKZ at sample size", _invertible, defect=float(_defects[i, j]))


def conjugated_diagonal_instance(n: int = 3, seed: int = 42, samples: int = 8) -> ModuleInstance:
    """C^n acting on C^n through P diag(a) P^-1 with Lambda(m) = mu (P^-1 m)_0.

    The character is the first coordinate; the declared samples of S are P v
    with every coordinate of v away from zero.
    """
    if n < 1:
        raise DomainError(f"Instance dimension must be positive, got {n}")
    rng = np.random.default_rng(seed)
    P = np.eye(n) + 0.3 * _random_elements(rng, n, n) / np.sqrt(n)
    P_inverse = np.linalg.inv(P)
    _action = np.stack([P[:, [i]] @ P_inverse[[i], :] for i in range(n)])

    _v = np.exp(2j * np.pi * rng.uniform(size=(samples, n))) * rng.uniform(0.5, 2.0, size=(samples, n))
    _mu = complex(np.exp(2j * np.pi * rng.uniform()) * rng.uniform(0.5, 2.0))
    _chi = np.zeros(n, dtype=complex)
    _chi[0] = 1.0
    return ModuleInstance(
        algebra=FiniteAlgebra.diagonal(n),
        module=ModuleAction(_action),
        generating_set=GeneratingSet(_v @ P.T, "user-list"),
        functional=_mu * P_inverse[0],
        character=_chi,
    )
