from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import newton as secant

from ..angular.angular_mode import AngularMode, mode_from_total_index
from ..angular.eigenvalue import eigenvalue
from .photon_sphere import PhotonSphereData
from .symbols import radial_symbol

# Window of the scaled real part in which the semiclassical description holds
LAMBDA_WINDOW = (1.0, 2.0)


def zeeman_slopes(psd: PhotonSphereData) -> Tuple[float, float]:
    """
    The first-order rotational splitting a(1/r_0² ∓ z_0²) per unit k̃.

    The minus slope is the one realized by the edge quantization (F^{r,±}_0)² = F₀^θ; the plus slope is the
    opposite relative sign choice between the radial and angular a-terms.
    """
    a = psd.params.a
    return float(a * (1.0 / psd.r_0**2 - psd.z_0**2)), float(a * (1.0 / psd.r_0**2 + psd.z_0**2))


@dataclass(frozen=True)
class CombinedQuantization:
    lam_tilde: float
    k_tilde: float
    l_tilde: float
    branch: int
    # ∂λ̃/∂k̃ to first order in a
    slope: float
    zeeman_slope: float
    in_window: bool

    def to_record(self) -> Dict[str, Any]:
        return {
            "lambda_tilde": self.lam_tilde,
            "k_tilde": self.k_tilde,
            "l_tilde": self.l_tilde,
            "branch": self.branch,
            "slope": self.slope,
            "zeeman_slope": self.zeeman_slope,
            "in_window": self.in_window,
        }


def combined_quantization(
    psd: PhotonSphereData, k_tilde: float, l_tilde: float, branch: int = 1, h: Optional[float] = None
) -> CombinedQuantization:
    """
    Leading-order λ̃ solving (F^{r,±}_0(λ̃, k̃))² = F₀^θ(l̃, λ̃, k̃) on the branch λ̃ − ak̃/r_0² = ±z_0√F₀^θ.

    On the edge l̃ = ±k̃ the angular symbol is (Ek̃ − aλ̃)² and the solution is in closed form,

        λ̃ = k̃(a/r_0² ± Ez_0)/(1 ± az_0).

    Elsewhere √F₀^θ is taken as h(|μ_kl(λ̃/h)| − 1/2) from the angular eigenvalue solver, with k = k̃/h and
    |k| − 1/2 + l = |l̃|/h + 1/2, and the equation is solved by the secant method.

    Args:
        psd: Photon sphere data.
        k_tilde: The scaled azimuthal number.
        l_tilde: The scaled total angular index.
        branch: +1 or −1.
        h: The semiclassical parameter, needed off the edge.

    Returns:
        The prediction with its first-order k̃-slope; `in_window` tells whether 1 < |λ̃| < 2.
    """
    if branch not in (1, -1):
        raise ValueError(f"The branch must be +1 or -1, got {branch}")

    p = psd.params
    a, E, z_0, r_0 = p.a, p.E, psd.z_0, psd.r_0
    edge = bool(np.isclose(abs(l_tilde), abs(k_tilde), rtol=1e-12, atol=0.0))

    if edge:
        lam_tilde = k_tilde * (a / r_0**2 + branch * E * z_0) / (1.0 + branch * a * z_0)
    else:
        if h is None:
            raise ValueError("Off the edge l = +-k the semiclassical parameter h is required")
        mode = _mode_for(k_tilde, l_tilde, h)

        def mismatch(lam: float) -> float:
            mu = eigenvalue(p, mode, lam / h).mu.real
            return float(radial_symbol(psd, lam, k_tilde) - branch * h * (abs(mu) - 0.5))

        lam_tilde = float(secant(mismatch, branch * z_0 * abs(l_tilde), tol=1e-12, maxiter=50))

    zeeman_minus, _ = zeeman_slopes(psd)
    in_window = LAMBDA_WINDOW[0] < abs(lam_tilde) < LAMBDA_WINDOW[1]
    if not in_window:
        logging.getLogger().info(f"Predicted lambda~={lam_tilde} lies outside the window {LAMBDA_WINDOW}")

    return CombinedQuantization(
        lam_tilde=float(lam_tilde),
        k_tilde=float(k_tilde),
        l_tilde=float(l_tilde),
        branch=branch,
        slope=float(branch * z_0 + zeeman_minus),
        zeeman_slope=zeeman_minus,
        in_window=in_window,
    )


def _mode_for(k_tilde: float, l_tilde: float, h: float) -> AngularMode:
    k = k_tilde / h
    l = abs(l_tilde) / h
    if not np.isclose(2 * k, round(2 * k)) or not np.isclose(2 * l, round(2 * l)):
        raise ValueError(f"k~/h = {k} and |l~|/h = {l} must be half-integers")

    mode = mode_from_total_index(round(2 * k) / 2, round(2 * l) / 2 + 0.5)
    return mode if l_tilde > 0 else mode.mirrored()
