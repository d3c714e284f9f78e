import numpy as np

from ._hardy import HardySpace
from ._weighted import WeightedSpace

# Accepted tags and the space each one names.
SPACE_TAGS = {
    "Hardy": "Hardy",
    "Hardy2": "Hardy",
    "Bergman": "Bergman",
    "Bergman2": "Bergman",
    "Dirichlet": "Dirichlet",
}


class SpaceManager:
    """Manage space specific computations.
    Currently supporting Hardy, Bergman and Dirichlet spaces.
    """

    def __init__(self, tag: str):
        if tag not in SPACE_TAGS:
            raise ValueError(
                f"Unknown space {tag!r}, expected one of {', '.join(SPACE_TAGS)}"
            )
        self.tag = tag
        if SPACE_TAGS[tag] == "Hardy":
            self._space = HardySpace()
        else:
            self._space = WeightedSpace(SPACE_TAGS[tag])

    @property
    def name(self) -> str:
        return self._space.name

    @property
    def needs_boundary(self) -> bool:
        return self._space.needs_boundary

    def weights(self, degree: int) -> np.ndarray:
        return self._space.weights(degree)

    def norm(self, taylor: np.ndarray, p: float, samples: np.ndarray | None = None):
        return self._space.norm(taylor, p, samples)

    def shift_norm(self, n: int, degree: int) -> float:
        """Norm of multiplication by z^n on polynomials of degree <= ``degree``.

        z^k maps to z^(k+n); for diagonal weights the operator norm is
        sup over k <= degree-n of sqrt(w(k+n)/w(k)).
        """
        _weights = self.weights(degree)
        _ratios = _weights[n:] / _weights[: degree - n + 1]
        return float(np.sqrt(np.max(_ratios)))
