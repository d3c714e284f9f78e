"""Command adapters: parsed JSON in, (report, exit code) out."""

from rich.console import Console

from ._base import DomainError, HypothesisViolation
from ._config import RunConfig
from ._core import (
    BoundaryFunction,
    DiskFunction,
    MobiusMap,
    OperatorMatrix,
    factorize,
    forelli_isometry,
    is_outer,
    shift_multiplier_norm,
    shift_norm_trend,
    wco_matrix,
)
from ._gkz import (
    CoefficientFunctional,
    ForelliCertificate,
    FiniteAlgebra,
    GeneratingSet,
    ModuleAction,
    check_generating_set,
    check_outer_nonvanishing,
    classify_isometry,
    conjugated_diagonal_instance,
    difference_quotient_check,
    explain_functional,
    extract_character,
    invertibility_margins,
    outer_test_family,
    recover_functional,
    recover_operator,
    regular_module,
    scalar_gkz_check,
    swap_unitary,
    verify_algebra,
    verify_module,
)
from ._utils import decode_array, decode_complex, encode_value, expect_object

_console = Console(stderr=True)

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_COUNTEREXAMPLE = 3


def error_report(error: Exception) -> dict:
    _report = {"error": type(error).__name__, "message": str(error)}
    if isinstance(error, HypothesisViolation) and error.witness is not None:
        _report["witness"] = encode_value(error.witness)
    return _report


def parse_function(data) -> DiskFunction | BoundaryFunction:
    """A bare coefficient list, ``{"taylor": ...}`` or ``{"n": ..., "samples": ...}``."""
    if isinstance(data, list):
        return DiskFunction(decode_array(data, 1))
    if "taylor" in data:
        return DiskFunction(decode_array(data["taylor"], 1))
    if "samples" in data:
        return BoundaryFunction.from_dict(data)
    raise KeyError("Expected a coefficient list, 'taylor' or 'samples'")


def parse_operator(data: dict, config: RunConfig) -> OperatorMatrix:
    """``{"operator": rows}`` or ``{"builder": {"kind": "swap" | "forelli" | "wco", ...}}``."""
    expect_object(data, "the operator input")
    if "operator" in data:
        return OperatorMatrix(decode_array(data["operator"], 2))
    _builder = expect_object(data["builder"], "the operator builder")
    _kind = _builder["kind"]
    if _kind == "swap":
        return swap_unitary(config.degree)
    if _kind == "forelli":
        _mobius = MobiusMap(decode_complex(_builder.get("w", 0.0)), decode_complex(_builder.get("c_phi", 1.0)))
        return forelli_isometry(
            _mobius, decode_complex(_builder.get("c", 1.0)), float(_builder.get("p", 2.0)), config.degree, config.grid
        )
    if _kind == "wco":
        return wco_matrix(
            parse_function(_builder["psi"]), parse_function(_builder["phi"]), config.degree, config.grid
        )
    raise ValueError(f"Unknown operator builder {_kind!r}")


def cmd_factor(data, config: RunConfig):
    f = parse_function(data)
    if isinstance(f, DiskFunction) and f.is_zero():
        raise DomainError("The zero function has no inner-outer factorization")
    _factorization = factorize(f, config.grid, config.degree)
    _outerness = _factorization.outerness
    if _outerness is None:
        _outerness = is_outer(_factorization.outer, config.grid, config.tol)
    _console.log(f"[green]Factored: outerness defect {_outerness.defect:.3e}[/green]")
    return {
        "outer": _factorization.outer.to_dict(),
        "inner_boundary": _factorization.inner.boundary.to_dict(),
        "inner_taylor": _factorization.inner.taylor.to_dict(),
        "inner_negative_energy_ratio": _factorization.inner.negative_energy_ratio,
        "outerness_report": _outerness.to_dict(),
    }, EXIT_OK


def cmd_recover_functional(data, config: RunConfig):
    _functional = CoefficientFunctional.from_dict(data)
    _report = recover_functional(_functional, config.tol)
    _result = {"recovery": _report.to_dict()}
    if "f" in data:
        _result["difference_quotient_residual"] = difference_quotient_check(
            _functional, parse_function(data["f"]), config.tol
        )
    if _report.verdict:
        return _result, EXIT_OK

    _family = outer_test_family(seed=config.seed, degree=config.degree, n=config.grid)
    _witness = explain_functional(_functional, _family, config.tol, config.grid)
    if _witness is None:
        _result["message"] = "no witness found at resolution"
        return _result, EXIT_VIOLATION
    _result["witness"] = _witness.to_dict()
    return _result, EXIT_COUNTEREXAMPLE


def cmd_recover_operator(data: dict, config: RunConfig):
    T = parse_operator(data, config)
    _report = recover_operator(T, config.tol, config.grid)
    _result = {"recovery": _report.to_dict()}
    if data.get("margins"):
        _result["margins"] = invertibility_margins(T, config.tol, config.grid).to_dict()
    if _report.verdict:
        return _result, EXIT_OK

    _family = outer_test_family(seed=config.seed, degree=T.degree, n=config.grid)
    _witness = check_outer_nonvanishing(T, _family, tol=config.tol, n=config.grid)
    if _witness is None:
        _result["message"] = "not a weighted composition operator; no witness found at resolution"
        return _result, EXIT_VIOLATION
    _result["witness"] = _witness.to_dict()
    return _result, EXIT_COUNTEREXAMPLE


def cmd_classify_isometry(data: dict, config: RunConfig):
    T = parse_operator(data, config)
    _family = [parse_function(g) for g in data["family"]] if "family" in data else None
    _result = classify_isometry(
        T, config.tol, family=_family, n=config.grid, block=data.get("block"), seed=config.seed
    )
    if isinstance(_result, ForelliCertificate):
        return {"certificate": _result.to_dict()}, EXIT_OK
    return {"counterexample": _result.to_dict()}, EXIT_COUNTEREXAMPLE


def _parse_module_input(data: dict, config: RunConfig):
    expect_object(data, "the module-gkz input")
    if "builder" in data:
        _builder = expect_object(data["builder"], "the module builder")
        if _builder.get("kind") != "conjugated-diagonal":
            raise ValueError(f"Unknown module builder {_builder.get('kind')!r}")
        _instance = conjugated_diagonal_instance(int(_builder.get("n", 3)), config.seed)
        return _instance.algebra, _instance.module, _instance.generating_set, _instance.functional
    A = FiniteAlgebra.from_dict(data["algebra"])
    act = ModuleAction.from_dict(data["module"]) if "module" in data else regular_module(A)
    return A, act, GeneratingSet.from_dict(data["S"]), decode_array(data["functional"], 1)


def cmd_module_gkz(data: dict, config: RunConfig):
    A, act, S, functional = _parse_module_input(data, config)
    _algebra = verify_algebra(A)
    _result = {"algebra_check": _algebra.to_dict()}
    if not _algebra.ok:
        _result["message"] = f"not an associative unital algebra: {_algebra.law} at {_algebra.location}"
        return _result, EXIT_VIOLATION
    _module = verify_module(A, act)
    _result["module_check"] = _module.to_dict()
    if not _module.ok:
        _result["message"] = f"not a module: {_module.law} at {_module.location}"
        return _result, EXIT_VIOLATION

    _exit = EXIT_OK
    if "scalar_functional" in data:
        _scalar = scalar_gkz_check(A, decode_array(data["scalar_functional"], 1), seed=config.seed, tol=config.tol)
        _result["scalar"] = _scalar.to_dict()
        if not _scalar.ok:
            _exit = EXIT_COUNTEREXAMPLE

    _character = extract_character(A, act, S, functional, config.tol)
    _result["character"] = _character.to_dict()
    _result["closure"] = check_generating_set(A, act, S, seed=config.seed, tol=config.tol).to_dict()
    if not _character.verdict:
        _exit = EXIT_COUNTEREXAMPLE
    return _result, _exit


def cmd_shift_norms(data: dict, config: RunConfig):
    expect_object(data, "the shift-norms input")
    _space = data.get("space", "Hardy2")
    _n_max = int(data.get("n_max", 64))
    _degree = max(config.degree, _n_max)
    _result = {"space": _space, "trend": [_row.to_dict() for _row in shift_norm_trend(_space, _n_max, _degree)]}
    if "n" in data:
        _result["n"] = int(data["n"])
        _result["norm"] = shift_multiplier_norm(_space, int(data["n"]), _degree)
        _console.log(f"[green]||u^{data['n']}|| on {_space} = {_result['norm']}[/green]")
    return _result, EXIT_OK


COMMANDS = {
    "factor": cmd_factor,
    "recover-functional": cmd_recover_functional,
    "recover-operator": cmd_recover_operator,
    "classify-isometry": cmd_classify_isometry,
    "module-gkz": cmd_module_gkz,
    "shift-norms": cmd_shift_norms,
}
