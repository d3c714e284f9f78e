"""Base classes for reports and the error hierarchy."""

from dataclasses import fields

from ._utils import encode_value


class BaseReport:
    """Mixin for report dataclasses serialized with complex numbers as [re, im]."""

    def to_dict(self) -> dict:
        return {_field.name: encode_value(getattr(self, _field.name)) for _field in fields(self)}


class GkzError(ValueError):
    """Root of every error raised by hardygkz."""


class DomainError(GkzError):
    """Argument outside the domain of an operation."""


class AliasingError(GkzError):
    """Boundary grid too coarse for the degree in play."""


class NotAnalyticError(GkzError):
    """Boundary data with too much negative-frequency energy."""

    def __init__(self, ratio: float, tolerance: float):
        self.ratio = ratio
        super().__init__(
            f"Boundary data is not analytic: negative-frequency energy ratio "
            f"{ratio:.3e} exceeds {tolerance:.1e}"
        )


class ModulusTooSmallError(GkzError):
    """Boundary modulus under the log-integrability floor."""

    def __init__(self, index: int, value: float, floor: float):
        self.index = index
        self.value = value
        super().__init__(
            f"Modulus too close to zero: G[{index}] = {value:.3e} <= {floor:.1e}"
        )


class BoundaryZeroError(GkzError):
    """Boundary data vanishing at grid resolution."""


class HypothesisViolation(GkzError):
    """A hypothesis of the recovery theorems fails; ``witness`` says where."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class VanishesOnOuterError(HypothesisViolation):
    pass


class WeightVanishesError(HypothesisViolation):
    pass


class NotSelfMapError(HypothesisViolation):
    pass


class NotIsometricError(HypothesisViolation):
    pass


class NotBilateralContractionError(HypothesisViolation):
    pass


class NormalizationError(HypothesisViolation):
    pass


class NonvanishingViolation(HypothesisViolation):
    """The functional vanishes on a declared element of S."""
