from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .horizons import Side
from .regge_wheeler import ReggeWheelerMap, chart_inverse, chart_log_terms

# Cauchy circle radius relative to the validated disc
CAUCHY_RADIUS_FACTOR = 1.25
DEFAULT_CHART_POINTS = 256


@dataclass(frozen=True)
class HorizonChart:
    """
    Taylor coefficients in w = e^{κ_± x} of the coefficient functions near one horizon.

    𝔞 and r𝔞 carry only odd powers of w, 1/(r² + a²) and r/(r² + a²) only even ones. The expansions are
    validated on |w| ≤ `radius`.
    """

    side: Side
    kappa: float
    radius: float
    a_coeffs: npt.NDArray[np.float64]
    ra_coeffs: npt.NDArray[np.float64]
    inv_coeffs: npt.NDArray[np.float64]
    r_inv_coeffs: npt.NDArray[np.float64]
    aE: float
    qQ: float
    field_mass: float

    @property
    def order(self) -> int:
        return len(self.a_coeffs) - 1

    def c_coeffs(self, k: float) -> npt.NDArray[np.float64]:
        """Taylor coefficients of c(x, k) = (aEk + 𝔮Qr)/(r² + a²)."""
        return self.aE * k * self.inv_coeffs + self.qQ * self.r_inv_coeffs

    def b_coeffs(self) -> npt.NDArray[np.float64]:
        return self.field_mass * self.ra_coeffs

    def w_of_x(self, x: float) -> float:
        return float(np.exp(self.kappa * x))


def horizon_chart(rw_map: ReggeWheelerMap, side: Side, n_points: int = DEFAULT_CHART_POINTS) -> HorizonChart:
    """
    Taylor coefficients from the Cauchy integral on the circle |w| = 1.25·e^{−|κ_±|X0}, evaluated with an FFT.

    Args:
        rw_map: The Regge-Wheeler coordinate, providing X0 and the horizon data.
        side: Which horizon to expand at.
        n_points: Number of points on the Cauchy circle; coefficients up to order n_points/2 − 1 are kept.

    Returns:
        The chart with its coefficient tables.
    """
    H = rw_map.horizons
    p = H.params
    kappa = H.kappa(side)
    radius = float(np.exp(-abs(kappa) * rw_map.X0))
    rho = CAUCHY_RADIUS_FACTOR * radius

    w = rho * np.exp(2j * np.pi * np.arange(n_points) / n_points)
    s = chart_inverse(H, side, w**2)
    G, _, others = chart_log_terms(H, side, s)
    r = H.root(side) - side.sign * s
    inv = 1.0 / (r**2 + p.a**2)
    frak_a = w * np.sqrt(p.Lambda / 3.0 * others * np.exp(-G)) * inv

    n_keep = n_points // 2
    scale = rho ** -np.arange(n_keep)

    def taylor(values: npt.NDArray[np.complex128]) -> npt.NDArray[np.float64]:
        return np.real(np.fft.fft(values)[:n_keep] / n_points * scale)

    return HorizonChart(
        side=side,
        kappa=kappa,
        radius=radius,
        a_coeffs=taylor(frak_a),
        ra_coeffs=taylor(r * frak_a),
        inv_coeffs=taylor(inv),
        r_inv_coeffs=taylor(r * inv),
        aE=p.a * p.E,
        qQ=p.q * p.Q,
        field_mass=p.m,
    )
