from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .photon_sphere import PhotonSphereData


def radial_symbol(psd: PhotonSphereData, lam_tilde: float, k_tilde: float, branch: int = 1) -> float:
    """
    Leading radial quantization symbol F^{r,±}_0(λ̃, k̃) to first order in a.

    The general expression

        λ̃r_0F^{-1/2}(r_0) + (a/r_0)[H(1 − r_0F'(r_0)/(2F(r_0))) − F^{-1/2}(r_0)k̃]

    loses its H term because r_0 solves F'r_0 = 2F, leaving (λ̃ − ak̃/r_0²)/z_0. The two branches are
    related by F^{r,−}_0 = −F^{r,+}_0.
    """
    if branch not in (1, -1):
        raise ValueError(f"The branch must be +1 or -1, got {branch}")

    a = psd.params.a
    shape = 1.0 - psd.r_0 * psd.F_prime_0 / (2.0 * psd.F_0)
    value = lam_tilde * psd.r_0 / np.sqrt(psd.F_0) + (a / psd.r_0) * (
        psd.H(k_tilde) * shape - k_tilde / np.sqrt(psd.F_0)
    )
    return float(branch * value)


@dataclass(frozen=True)
class AngularSymbol:
    value: float
    # ∂F₀^θ/∂l̃ at the edge l̃ = ±k̃
    edge_derivative: float
    # ∂F₀^θ/∂k̃ at fixed l̃
    k_derivative: float


def angular_symbol(lam_tilde: float, k_tilde: float, a: float, E: float, l_tilde: float) -> AngularSymbol:
    """
    Leading angular symbol at the edge of the angular spectrum, F₀^θ(±k̃, λ̃, k̃) = (Ek̃ − aλ̃)² = E²(k̃ − aλ̆)²
    with λ̆ = λ̃/E.

    Raises:
        ValueError: When l̃ is not ±k̃.
    """
    if not np.isclose(abs(l_tilde), abs(k_tilde), rtol=1e-12, atol=0.0):
        raise ValueError(f"The closed-form angular symbol holds on the edge l = +-k, got l={l_tilde}, k={k_tilde}")

    lam_breve = lam_tilde / E
    value = E**2 * (k_tilde - a * lam_breve) ** 2
    edge_derivative = 2.0 * l_tilde
    # d/dk̃ along the edge splits into the l̃-derivative (times l̃/k̃ = ±1) and the partial in k̃
    k_derivative = 2.0 * E * (E * k_tilde - a * lam_tilde) - edge_derivative * (l_tilde / k_tilde)

    return AngularSymbol(float(value), float(edge_derivative), float(k_derivative))


def bottom_of_well(lam_breve: complex, k_tilde: float, a: float, E: float) -> complex:
    """U₀(0) = k̃² − (aReλ̆)² − (E − 1)(aReλ̆ − k̃)², the curvature of the angular well at its bottom."""
    re = float(np.real(lam_breve))
    return complex(k_tilde**2 - (a * re) ** 2 - (E - 1.0) * (a * re - k_tilde) ** 2)


def overtone_condition(lam_breve: complex, k_tilde: float, a: float, E: float, h: float, m: int) -> complex:
    """
    E²(k̃ − aλ̆)² + (2m + 1)h√U₀(0), the value of (ω̃ + ihμ̃)² at the m-th level of the angular well.
    """
    if m < 0:
        raise ValueError(f"The overtone index must be nonnegative, got {m}")

    U0 = bottom_of_well(lam_breve, k_tilde, a, E)
    return complex(E**2 * (k_tilde - a * lam_breve) ** 2 + (2 * m + 1) * h * np.sqrt(U0))
