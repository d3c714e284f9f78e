import os
from dataclasses import dataclass
from pathlib import Path
from typing import Literal


class Tolerances:
    """Numerical constants shared by the engines."""

    MODULUS_FLOOR = 1e-10  # below this log G is unreliable at N=4096
    ZERO_COEFFICIENT = 1e-12  # leading coefficients treated as exact zeros
    SELFMAP_MARGIN = 1e-6  # required gap between max |phi| and 1
    ANALYTIC_RATIO = 1e-10  # negative-frequency energy allowed in projections
    BOUNDARY_ROOT = 1e-8  # ||lambda| - 1| accepted for a boundary root
    UNIT_MODULUS = 1e-12  # ||c| - 1| accepted for Mobius rotations
    INVERTIBILITY_CONDITION = 1e8  # condition number proxy for invertibility
    WEIGHT_RADIUS = 0.99
    WITNESS_RADII = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)


@dataclass(frozen=True)
class RunConfig:
    """Settings of one command-line run.

    Attributes:
        grid: number of boundary samples, a power of two.
        degree: truncation degree of every Taylor series.
        tol: verdict tolerance.
        seed: seed of every random family.
        input_path: JSON input, ``None`` reads stdin.
        output_path: report destination, ``None`` writes stdout.
        output_format: ``json`` or ``csv``.
    """

    grid: int = 4096
    degree: int = 256
    tol: float = 1e-8
    seed: int = 42
    input_path: Path | None = None
    output_path: Path | None = None
    output_format: Literal["json", "csv"] = "json"

    def __post_init__(self):
        if self.grid < 2 or self.grid & (self.grid - 1):
            raise ValueError(f"Grid size must be a power of two, got {self.grid}")
        if not 0 <= self.degree < self.grid // 2:
            raise ValueError(
                f"Degree must satisfy 0 <= d < N/2, got d={self.degree}, N={self.grid}"
            )
        if not self.tol > 0:
            raise ValueError(f"Tolerance must be positive, got {self.tol}")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"Unknown output format {self.output_format!r}")


def thread_count() -> int:
    """Parallelism cap taken from ``HARDY_GKZ_THREADS``."""
    _value = os.environ.get("HARDY_GKZ_THREADS")
    if _value:
        try:
            return max(1, int(_value))
        except ValueError:
            raise ValueError(f"HARDY_GKZ_THREADS must be an integer, got {_value!r}")
    return os.cpu_count() or 1
