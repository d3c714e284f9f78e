from ._base import (
    AliasingError,
    BoundaryZeroError,
    DomainError,
    GkzError,
    HypothesisViolation,
    ModulusTooSmallError,
    NonvanishingViolation,
    NormalizationError,
    NotAnalyticError,
    NotBilateralContractionError,
    NotIsometricError,
    NotSelfMapError,
    VanishesOnOuterError,
    WeightVanishesError,
)
from ._config import RunConfig, Tolerances
from ._core import *  # noqa: F401,F403
from ._gkz import *  # noqa: F401,F403
