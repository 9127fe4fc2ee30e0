from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict

import numpy as np
from scipy.optimize import brentq

from ..error.trapping_errors import DegenerateTrapping, NoInteriorTrapping
from ..spacetime.black_hole_params import BlackHoleParams
from ..spacetime.horizons import HorizonSet, Side, horizon_roots
from ..spacetime.regge_wheeler import regge_wheeler
from .photon_sphere import PhotonSphereData

SCAN_POINTS = 64
# Relative step of the central difference giving the second derivative at a trapping point
CURVATURE_STEP = 1e-5


def _interior_extremum(
    func: Callable[[float], float], derivative: Callable[[float], float], H: HorizonSet, what: str
) -> float:
    """Maximizer of `func` on (r_-, r_+): a scan on evenly spaced interior points, then a root of the derivative."""
    lo, hi = H.r_minus, H.r_plus
    r = lo + (hi - lo) * (np.arange(SCAN_POINTS) + 0.5) / SCAN_POINTS
    values = np.array([func(ri) for ri in r])
    idx = int(np.argmax(values))
    if idx == 0 or idx == SCAN_POINTS - 1:
        raise NoInteriorTrapping(f"The maximum of {what} on ({lo}, {hi}) is attained at the boundary, r={r[idx]}")

    a, b = r[idx - 1], r[idx + 1]
    if derivative(a) * derivative(b) > 0:
        return float(r[idx])
    return float(brentq(derivative, a, b, xtol=1e-14 * hi, rtol=1e-15))


@dataclass(frozen=True)
class TrappedFrequency:
    omega0: float
    r_trap: float
    x_trap: float
    lam_tilde: float
    k_tilde: float

    def expansion_error(self, psd: PhotonSphereData) -> float:
        """|r_trap − (r_0 + aH/ω̃₀)|, of second order in a."""
        a = psd.params.a
        return abs(self.r_trap - (psd.r_0 + a * psd.H(self.k_tilde) / self.omega0))

    def to_record(self) -> Dict[str, Any]:
        return {"omega0": self.omega0, "r_trap": self.r_trap, "x_trap": self.x_trap}


def trapped_frequency(p: BlackHoleParams, lam_tilde: float, k_tilde: float) -> TrappedFrequency:
    """
    The barrier-top frequency ω̃₀(λ̃, k̃), where ω̃₀^{-2} is the maximum of

        F_V(r) = Δ_r/[λ̃(r² + a²) − aEk̃]²

    over (r_-, r_+), together with the radius where it is attained.

    Raises:
        NoInteriorTrapping: When the maximum is not attained in the interior.
    """
    H = horizon_roots(p)
    aEk = p.a * p.E * k_tilde

    def denominator(r: float) -> float:
        return float(lam_tilde * (r**2 + p.a**2) - aEk)

    if denominator(H.r_minus) * denominator(H.r_plus) <= 0:
        raise ValueError(f"lambda={lam_tilde} makes the trapping denominator vanish on ({H.r_minus}, {H.r_plus})")

    def F_V(r: float) -> float:
        return float(p.delta_r(r) / denominator(r) ** 2)

    def F_V_prime(r: float) -> float:
        D = denominator(r)
        return float((p.delta_r_prime(r) * D - 4.0 * lam_tilde * r * p.delta_r(r)) / D**3)

    r_trap = _interior_extremum(F_V, F_V_prime, H, "F_V")
    omega0 = 1.0 / np.sqrt(F_V(r_trap))
    x_trap = float(regge_wheeler(p, H).x_of_r(r_trap))

    return TrappedFrequency(float(omega0), r_trap, x_trap, float(lam_tilde), float(k_tilde))


@dataclass(frozen=True)
class BetaZero:
    value: float
    side: Side
    r_trap: float
    x_trap: float
    # Second x-derivative of c₀ ± |ω̃|𝔞 at the trapping point
    curvature: float


def beta0(p: BlackHoleParams, lam_tilde: float, omega_tilde: float, k_tilde: float, side: Side) -> BetaZero:
    """
    The constant β₀,± of the normal form at the critical point x_± of c₀ ± |ω̃|𝔞, with c₀ = aEk̃/(r² + a²):

        β₀,± = ∓(c₀(x_±) − λ̃ ± ω̃𝔞(x_±))·(|ω̃|𝔞(x_±))^{1/2} / |(c₀ ± |ω̃|𝔞)''(x_±)|^{1/2}.

    β₀,+ vanishes exactly when ω̃ = ω̃₀(λ̃, k̃), and β₀,-(λ̃, ω̃, k̃) = β₀,+(−λ̃, ω̃, −k̃).

    Raises:
        DegenerateTrapping: When the critical point is degenerate.
    """
    H = horizon_roots(p)
    s = side.sign
    aEk = p.a * p.E * k_tilde
    w = abs(omega_tilde)

    def frak_a(r: float) -> float:
        return float(np.sqrt(max(p.delta_r(r), 0.0)) / (r**2 + p.a**2))

    def phi(r: float) -> float:
        return aEk / (r**2 + p.a**2) + s * w * frak_a(r)

    def phi_r(r: float) -> float:
        rho2 = r**2 + p.a**2
        sqrt_delta = np.sqrt(max(p.delta_r(r), 0.0))
        da = p.delta_r_prime(r) / (2.0 * sqrt_delta * rho2) - 2.0 * r * sqrt_delta / rho2**2
        return float(-2.0 * r * aEk / rho2**2 + s * w * da)

    # c₀ + |ω̃|𝔞 has a maximum, c₀ − |ω̃|𝔞 a minimum
    r_trap = _interior_extremum(lambda r: s * phi(r), lambda r: s * phi_r(r), H, f"c0 {'+' if s > 0 else '-'} |w|a")

    step = CURVATURE_STEP * (H.r_plus - H.r_minus)
    phi_rr = (phi_r(r_trap + step) - phi_r(r_trap - step)) / (2.0 * step)
    dr_dx = p.delta_r(r_trap) / (r_trap**2 + p.a**2)
    curvature = float(dr_dx**2 * phi_rr)
    if abs(curvature) < 1e-12 * max(1.0, abs(phi(r_trap))):
        raise DegenerateTrapping(f"Degenerate critical point of c0 {s:+d}|w|a at r={r_trap}")

    c0 = aEk / (r_trap**2 + p.a**2)
    a_trap = frak_a(r_trap)
    value = -s * (c0 - lam_tilde + s * omega_tilde * a_trap) * np.sqrt(w * a_trap) / np.sqrt(abs(curvature))
    x_trap = float(regge_wheeler(p, H).x_of_r(r_trap))
    logging.getLogger().debug(f"beta0 on side {side.name}: critical point r={r_trap}, x={x_trap}")

    return BetaZero(float(value), side, r_trap, x_trap, curvature)
