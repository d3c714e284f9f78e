import numpy as np


class WeightedSpace:
    """Hilbert space of Taylor series with diagonal weights w(k).

    Bergman A^2 has w(k) = 1/(k+1), Dirichlet has w(k) = k+1; the norm is
    (sum w(k) |c_k|^2)^(1/2).
    """

    needs_boundary = False

    def __init__(self, name: str):
        if name not in ("Bergman", "Dirichlet"):
            raise ValueError(f"Unknown weighted space {name!r}")
        self.name = name

    def weights(self, degree: int) -> np.ndarray:
        _k = np.arange(degree + 1, dtype=float)
        if self.name == "Bergman":
            return 1.0 / (_k + 1.0)
        return _k + 1.0

    def norm(self, taylor: np.ndarray, p: float, samples: np.ndarray | None) -> float:
        _weights = self.weights(len(taylor) - 1)
        return float(np.sqrt(np.sum(_weights * np.abs(taylor) ** 2)))
