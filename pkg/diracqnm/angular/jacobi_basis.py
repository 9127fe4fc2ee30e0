from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
import numpy.typing as npt
from scipy.special import gammaln, roots_legendre

# Quadrature nodes in excess of the basis size
QUADRATURE_MARGIN = 64


def jacobi_values(n_max: int, a: float, b: float, x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """
    P_n^{(a,b)}(x) for n = 0..n_max by the three-term recurrence, one row per degree.
    """
    P = np.zeros((n_max + 1, len(x)))
    P[0] = 1.0
    if n_max >= 1:
        P[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for n in range(2, n_max + 1):
        c = 2.0 * n + a + b
        A1 = 2.0 * n * (n + a + b) * (c - 2.0)
        A2 = (c - 1.0) * (a**2 - b**2)
        A3 = (c - 2.0) * (c - 1.0) * c
        A4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c
        P[n] = ((A2 + A3 * x) * P[n - 1] - A4 * P[n - 2]) / A1

    return P


def jacobi_log_norms(n_max: int, a: float, b: float) -> npt.NDArray[np.float64]:
    n = np.arange(n_max + 1, dtype=float)
    return (
        (a + b + 1.0) * np.log(2.0)
        - np.log(2.0 * n + a + b + 1.0)
        + gammaln(n + a + 1.0)
        + gammaln(n + b + 1.0)
        - gammaln(n + a + b + 1.0)
        - gammaln(n + 1.0)
    )


def orthonormal_jacobi(
    size: int, a: float, b: float, x: npt.NDArray[np.float64]
) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """
    Values and first derivatives of the first `size` Jacobi polynomials orthonormal for (1−x)^a(1+x)^b.
    """
    P = jacobi_values(size - 1, a, b, x)
    dP = np.zeros_like(P)
    if size > 1:
        n = np.arange(1, size, dtype=float)[:, None]
        dP[1:] = (n + a + b + 1.0) / 2.0 * jacobi_values(size - 2, a + 1.0, b + 1.0, x)

    inv_norm = np.exp(-0.5 * jacobi_log_norms(size - 1, a, b))[:, None]
    return P * inv_norm, dP * inv_norm


def envelope_exponents(k: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """
    Exponents (α, β) of the envelopes (1−x)^α(1+x)^β of the two spinor components, x = cosθ.

    The component vanishing faster at θ = 0 is the upper one for k > 0 and the lower one for k < 0.
    """
    sigma = abs(k)
    fast = ((sigma + 1.0) / 2.0, sigma / 2.0)
    slow = (sigma / 2.0, (sigma + 1.0) / 2.0)
    return (fast, slow) if k > 0 else (slow, fast)


@dataclass(frozen=True)
class ComponentBasis:
    alpha: float
    beta: float
    values: npt.NDArray[np.float64]
    derivatives: npt.NDArray[np.float64]

    def ladder(self, k: float, x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        """
        Polynomial part of (∂_θ + k/sinθ)φ for φ = (1−x)^α(1+x)^β p, the envelope (1−x)^{α−1/2}(1+x)^{β−1/2}
        being factored out.
        """
        shift = self.alpha * (1.0 + x) - self.beta * (1.0 - x) + k
        return shift * self.values - (1.0 - x**2) * self.derivatives

    def envelope(self, x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        return (1.0 - x) ** self.alpha * (1.0 + x) ** self.beta


@dataclass(frozen=True)
class ModeBasis:
    """Galerkin basis for one azimuthal number, with Gauss-Legendre quadrature in x = cosθ."""

    k: float
    size: int
    nodes: npt.NDArray[np.float64]
    weights: npt.NDArray[np.float64]
    upper: ComponentBasis
    lower: ComponentBasis


def _read_only(array: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    array.flags.writeable = False
    return array


@lru_cache(maxsize=64)
def mode_basis(k: float, size: int) -> ModeBasis:
    """
    Basis tables for the mode k with `size` functions per spinor component.

    The tables are shared between callers and are read-only.
    """
    nodes, weights = roots_legendre(2 * size + QUADRATURE_MARGIN)
    components = []
    for alpha, beta in envelope_exponents(k):
        values, derivatives = orthonormal_jacobi(size, 2.0 * alpha - 0.5, 2.0 * beta - 0.5, nodes)
        components.append(ComponentBasis(alpha, beta, _read_only(values), _read_only(derivatives)))

    return ModeBasis(
        k=k,
        size=size,
        nodes=_read_only(nodes),
        weights=_read_only(weights),
        upper=components[0],
        lower=components[1],
    )
