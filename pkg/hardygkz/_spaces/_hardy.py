import numpy as np


class HardySpace:
    """Hardy space H^p; the p = 2 coefficient weights are all one."""

    name = "Hardy"
    needs_boundary = True

    def weights(self, degree: int) -> np.ndarray:
        return np.ones(degree + 1)

    def norm(self, taylor: np.ndarray, p: float, samples: np.ndarray) -> float:
        """Trapezoid rule for (1/2pi int |f*|^p)^(1/p); max over the grid for p=inf."""
        _modulus = np.abs(samples)
        if np.isinf(p):
            return float(np.max(_modulus))
        return float(np.mean(_modulus**p) ** (1.0 / p))
