from __future__ import annotations

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ..spacetime.black_hole_params import BlackHoleParams
from .angular_mode import AngularMode
from .eigenvalue import DEFAULT_BASIS_SIZE, eigenvalue
from .jacobi_basis import mode_basis


def squared_operator_matrix(k: float, zeta: float, xi: complex, N: int) -> npt.NDArray[np.complex128]:
    """
    Galerkin matrix of P₊ = D₊D₋ on the upper spinor component.

    With D₋ = −i√Δ(∂_θ − q + γ) and the bilinear adjoint of D₊ equal to −D₋, the quadratic form is

        ⟨F_i, P₊F_j⟩ = ∫ Δ (F_i' − qF_i + γF_i)(F_j' − qF_j + γF_j) dθ,

    where q = ζ sin2θ/(4Δ) and γ = k/sinθ + (kζ − ξ) sinθ/Δ.
    """
    basis = mode_basis(k, N)
    x = basis.nodes
    w = basis.weights
    F = basis.upper
    delta = 1.0 + zeta * x**2

    # (∂ − q + γ)F = envelope·[ladder + (1 − x²)((kζ − ξ) − ζx/2)/Δ · p]
    envelope_sq_over_sin = (1.0 - x) ** (2.0 * F.alpha - 1.5) * (1.0 + x) ** (2.0 * F.beta - 1.5)
    Y = F.ladder(k, x) + ((1.0 - x**2) * ((k * zeta - xi) - zeta * x / 2.0) / delta) * F.values

    return (Y * (w * delta * envelope_sq_over_sin)) @ Y.T


def squared_operator_check(
    p: BlackHoleParams, mode: AngularMode, lam: complex, N: int = DEFAULT_BASIS_SIZE
) -> float:
    """
    |μ² − ε| with μ = μ_kl(λ) and ε the eigenvalue of the independently discretized P₊(λ) closest to μ².

    Args:
        p: A parameter set with a massless field.
        mode: The mode (k, l); the residual does not depend on the sign of l.
        lam: The spectral parameter.
        N: Number of basis functions per spinor component.

    Returns:
        The residual.
    """
    if p.m != 0:
        raise ValueError("The squared-operator check applies to the massless angular operator")

    mu = eigenvalue(p, mode, lam, N).mu
    spectrum = scipy.linalg.eigvals(squared_operator_matrix(mode.k, p.zeta, p.a * complex(lam), N))
    target = mu**2
    nearest = complex(spectrum[np.argmin(np.abs(spectrum - target))])

    return float(abs(target - nearest))
