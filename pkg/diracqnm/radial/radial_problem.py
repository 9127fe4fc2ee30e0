from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np
import numpy.typing as npt

from ..spacetime.background import Background
from ..spacetime.horizons import Side

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
_ZERO_2 = np.zeros((2, 2), dtype=complex)

# Full four-component system: Γ¹ is diagonal, Γ² couples through 𝔞 and Γ⁰ through the mass term 𝔟
GAMMA_1 = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
GAMMA_2 = np.block([[_ZERO_2, -1j * SIGMA_2], [1j * SIGMA_2, _ZERO_2]])
GAMMA_0 = np.block([[_ZERO_2, -1j * SIGMA_3], [1j * SIGMA_3, _ZERO_2]])


@dataclass(frozen=True)
class RadialProblem:
    """
    The radial Dirac system f' = −iΓ¹[(c − λ) + ω𝔞K_a + 𝔟K_b]f in the Regge-Wheeler coordinate.

    With `full_system` the four-component system is used. Otherwise the system is the two-component block
    f' = −iσ₃[(c − λ) + ω𝔞σ₁ + 𝔟σ₂]f, which for a massless field is the chirality-reduced equation and for a
    massive field is one of the two blocks the full system factorizes into (the other block has −ω).
    """

    background: Background
    lam: complex
    omega: complex
    k: float
    full_system: bool = False

    @property
    def dim(self) -> int:
        return 4 if self.full_system else 2

    @cached_property
    def matrices(self) -> Tuple[npt.NDArray[np.complex128], npt.NDArray[np.complex128], npt.NDArray[np.complex128]]:
        """(Γ¹, K_a, K_b) of the system."""
        if self.full_system:
            return GAMMA_1, GAMMA_2, GAMMA_0
        return SIGMA_3, SIGMA_1, SIGMA_2

    @property
    def signature(self) -> npt.NDArray[np.float64]:
        """The diagonal of Γ¹."""
        return np.real(np.diag(self.matrices[0]))

    @property
    def massive(self) -> bool:
        return self.background.params.m != 0

    def Omega(self, side: Side) -> float:
        return self.background.horizons.omega(side, self.k)

    def potential(self, r: float) -> npt.NDArray[np.complex128]:
        """(c − λ) + ω𝔞K_a + 𝔟K_b at the radius r."""
        coeffs = self.background.coefficients
        _, K_a, K_b = self.matrices
        V = (coeffs.c_of_r(r, self.k) - self.lam) * np.eye(self.dim, dtype=complex)
        V = V + self.omega * coeffs.a_of_r(r) * K_a
        if self.massive:
            V = V + coeffs.b_of_r(r) * K_b
        return V

    def derivative(self, r: float, f: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        """f' at a point where the radius is r."""
        return -1j * self.signature * (self.potential(r) @ f)

    def rhs(self, x: float, y: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        """
        Right-hand side of the system augmented by r' = Δ_r/(r² + a²), for `scipy.integrate.solve_ivp`.

        The state is y = (f, r); r is carried so that the coordinate map is never inverted while integrating.
        """
        r = y[-1].real
        dy = np.empty_like(y)
        dy[:-1] = self.derivative(r, y[:-1])
        dy[-1] = self.background.coefficients.dx_weight(r)
        return dy

    def partner(self) -> RadialProblem:
        """The other block of the massive system, at −ω."""
        if self.full_system:
            raise ValueError("The four-component system has no partner block")
        return RadialProblem(self.background, self.lam, -self.omega, self.k)

    def with_spectral(self, lam: complex, omega: complex) -> RadialProblem:
        return RadialProblem(self.background, complex(lam), complex(omega), self.k, self.full_system)


def conjugate_solution(f: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """
    σ₁f̄ for a solution f of the two-component system at (λ, ω).

    The result solves the system at (λ̄, ω̄), so at real (λ, ω) it is again a solution.
    """
    f = np.asarray(f, dtype=complex)
    if f.shape[0] != 2:
        raise ValueError(f"Swap-conjugation acts on two-component spinors, got {f.shape[0]} components")
    return np.conj(f[::-1])
