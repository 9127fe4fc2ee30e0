from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from ..error.trapping_errors import NoPhotonSphere
from ..spacetime.black_hole_params import BlackHoleParams
from ..spacetime.horizons import photon_sphere_radius


@dataclass(frozen=True)
class PhotonSphereData:
    """
    Data of the trapped null geodesics of the non-rotating black hole with the same M, Q and Λ.

    r_0 solves F'(r_0)r_0 = 2F(r_0); z_0 = F(r_0)^{1/2}/r_0 is the leading real spacing of the quasi-normal
    modes and α/z_0 the spacing of their imaginary parts.
    """

    params: BlackHoleParams
    r_0: float
    z_0: float
    alpha: float
    F_0: float
    F_prime_0: float

    def H(self, k_tilde: float) -> float:
        """First-order shift coefficient of the trapping radius, r_trap ≈ r_0 + aH/ω̃₀."""
        p = self.params
        return float(k_tilde * 4.0 * np.sqrt(self.F_0) * self.r_0**2 / (8.0 * p.Q**2 - 6.0 * p.M * self.r_0))

    @property
    def defining_residual(self) -> float:
        """F'(r_0)r_0 − 2F(r_0), zero up to rounding."""
        return self.F_prime_0 * self.r_0 - 2.0 * self.F_0

    def to_record(self) -> Dict[str, Any]:
        return {
            "r0": self.r_0,
            "z0": self.z_0,
            "alpha": self.alpha,
            "F_r0": self.F_0,
            "H_per_ktilde": self.H(1.0),
        }


def photon_sphere(p: BlackHoleParams) -> PhotonSphereData:
    """
    Photon sphere data from the closed form r_0 = 3M/2 + ((3M/2)² − 2Q²)^{1/2}.

    Raises:
        NoPhotonSphere: When 2Q² ≥ (3M/2)², or when the trapped orbits are not unstable.
    """
    r_0 = photon_sphere_radius(p)
    F_0 = float(p.F(r_0))
    if F_0 <= 0:
        raise NoPhotonSphere(f"F(r_0) = {F_0} is not positive: r_0 = {r_0} lies outside the static region")

    z_0 = np.sqrt(F_0) / r_0
    instability = 3.0 * p.M / r_0 - 4.0 * p.Q**2 / r_0**2
    if instability <= 0:
        raise NoPhotonSphere(f"3M/r_0 - 4Q^2/r_0^2 = {instability} is not positive")

    return PhotonSphereData(
        params=p,
        r_0=r_0,
        z_0=float(z_0),
        alpha=float(z_0**2 * np.sqrt(instability)),
        F_0=F_0,
        F_prime_0=float(p.F_prime(r_0)),
    )


def kerr_ds_check(p: BlackHoleParams) -> Dict[str, float]:
    """
    Compare the uncharged closed forms with the general expressions evaluated at Q = 0.

    Returns:
        The largest relative discrepancy per constant:
        1/z_0² against 27M²/(1 − 9M²Λ), 2/(r_0z_0)² against 6/(1 − 9M²Λ),
        1/z_0 against 3√3M/(1 − 9M²Λ)^{1/2} and 1/(r_0²z_0) against 1/(√3M(1 − 9M²Λ)^{1/2}).
    """
    psd = photon_sphere(p.with_changes(Q=0.0))
    M, Lambda = p.M, p.Lambda
    root = np.sqrt(1.0 - 9.0 * M**2 * Lambda)
    pairs = {
        "inverse_z0_squared": (1.0 / psd.z_0**2, 27.0 * M**2 / root**2),
        "rotation_cross_term": (2.0 / (psd.r_0 * psd.z_0) ** 2, 6.0 / root**2),
        "inverse_z0": (1.0 / psd.z_0, 3.0 * np.sqrt(3.0) * M / root),
        "splitting_coefficient": (1.0 / (psd.r_0**2 * psd.z_0), 1.0 / (M * np.sqrt(3.0) * root)),
    }
    return {name: float(abs(general - closed) / abs(closed)) for name, (general, closed) in pairs.items()}
