from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AngularMode:
    """
    An azimuthal number k ∈ ℤ + 1/2 together with a nonzero branch index l.

    l > 0 labels the positive eigenvalues of the angular operator in increasing order, l < 0 their negatives.
    """

    k: float
    l: int

    def __post_init__(self) -> None:
        if not float(self.k - 0.5).is_integer():
            raise ValueError(f"The azimuthal number k must be a half-integer, got {self.k}")
        if self.l == 0 or int(self.l) != self.l:
            raise ValueError(f"The branch index l must be a nonzero integer, got {self.l}")

    @property
    def sigma(self) -> float:
        return abs(self.k)

    @property
    def branch(self) -> int:
        return int(np.sign(self.l))

    def mirrored(self) -> AngularMode:
        return AngularMode(self.k, -self.l)

    @property
    def total_index(self) -> float:
        """|k| − 1/2 + |l|, the value l + 1/2 of the pseudolattice labelling."""
        return abs(self.k) - 0.5 + abs(self.l)


def exact_eigenvalue_a0(mode: AngularMode) -> float:
    """μ_kl at a = 0: sgn(l)(|k| − 1/2 + |l|)."""
    return float(mode.branch * mode.total_index)


def mode_from_total_index(k: float, total_index: float) -> AngularMode:
    """
    The positive-branch mode with |k| − 1/2 + l = `total_index`.

    Raises:
        ValueError: When `total_index` is not reachable from this k.
    """
    l = total_index - abs(k) + 0.5
    if l < 1 or not float(l).is_integer():
        raise ValueError(f"No angular mode with k={k} has |k| - 1/2 + l = {total_index}")

    return AngularMode(k, int(l))
