from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..spacetime.black_hole_params import BlackHoleParams
from .jacobi_basis import ModeBasis, mode_basis

MIN_BASIS_SIZE = 16


@dataclass(frozen=True)
class AngularDiscretization:
    """
    Galerkin matrix of the angular Dirac operator on one azimuthal mode.

    The spinor is written u = (F, iG) with real F, G expanded in Jacobi polynomials times envelopes that
    vanish at the poles at the rate of the regular solutions. The basis is orthonormal, so the matrix

        [[−ν⟨F, cosθ F⟩, B], [Bᵀ, ν⟨G, cosθ G⟩]]

    is complex symmetric, affine in λ through ξ = aλ, and real symmetric for real λ. The massive operator is
    block diagonal, diag(Ã, −Ã), in the chirality basis.
    """

    k: float
    N: int
    zeta: float
    xi: complex
    nu: float
    massive: bool
    coupling: npt.NDArray[np.complex128]
    coupling_slope: npt.NDArray[np.float64]
    upper_mass: npt.NDArray[np.float64]
    lower_mass: npt.NDArray[np.float64]

    @property
    def reduced_matrix(self) -> npt.NDArray[np.complex128]:
        """The 2N block Ã acting on one chirality."""
        return np.block([[self.upper_mass, self.coupling], [self.coupling.T, self.lower_mass]])

    @property
    def matrix(self) -> npt.NDArray[np.complex128]:
        reduced = self.reduced_matrix
        if not self.massive:
            return reduced
        zeros = np.zeros_like(reduced)
        return np.block([[reduced, zeros], [zeros, -reduced]])

    def xi_slope(self) -> npt.NDArray[np.float64]:
        """∂Ã/∂ξ, a constant matrix."""
        zeros = np.zeros((self.N, self.N))
        return np.block([[zeros, self.coupling_slope], [self.coupling_slope.T, zeros]])

    @property
    def is_real(self) -> bool:
        return bool(np.imag(self.xi) == 0.0)


def discretize_operator(
    k: float, zeta: float, xi: complex, nu: float, N: int, massive: bool
) -> AngularDiscretization:
    if N < MIN_BASIS_SIZE:
        raise ValueError(f"The angular basis size N must be at least {MIN_BASIS_SIZE}, got {N}")

    basis: ModeBasis = mode_basis(k, N)
    x = basis.nodes
    w = basis.weights
    F = basis.upper
    G = basis.lower
    sqrt_delta = np.sqrt(1.0 + zeta * x**2)

    ladder_weight = (1.0 - x) ** (F.alpha + G.alpha - 1.0) * (1.0 + x) ** (F.beta + G.beta - 1.0)
    product_weight = (1.0 - x) ** (F.alpha + G.alpha) * (1.0 + x) ** (F.beta + G.beta)

    ladder = (F.values * (w * ladder_weight * sqrt_delta)) @ G.ladder(-k, x).T
    slope = (F.values * (w * product_weight / sqrt_delta)) @ G.values.T
    potential = (F.values * (w * product_weight * (k * zeta + zeta * x / 2.0) / sqrt_delta)) @ G.values.T
    coupling = ladder - potential + xi * slope

    upper_weight = F.envelope(x) ** 2 / np.sqrt(1.0 - x**2)
    lower_weight = G.envelope(x) ** 2 / np.sqrt(1.0 - x**2)
    upper_mass = -nu * (F.values * (w * upper_weight * x)) @ F.values.T
    lower_mass = nu * (G.values * (w * lower_weight * x)) @ G.values.T

    return AngularDiscretization(
        k=k,
        N=N,
        zeta=zeta,
        xi=complex(xi),
        nu=nu,
        massive=massive,
        coupling=coupling.astype(complex),
        coupling_slope=slope,
        upper_mass=upper_mass,
        lower_mass=lower_mass,
    )


def discretize(p: BlackHoleParams, k: float, lam: complex, N: int = 64) -> AngularDiscretization:
    """
    Discretize A_k(λ) for the parameter set `p`.

    Args:
        p: The parameter set, providing ζ = a²Λ/3, ξ = aλ and ν = a𝔪.
        k: The azimuthal half-integer.
        lam: The spectral parameter λ.
        N: Number of basis functions per spinor component.

    Returns:
        The discretization, of size 2N for a massless field and 4N for a massive one.
    """
    return discretize_operator(k, p.zeta, p.a * lam, p.nu, N, massive=p.m != 0)
