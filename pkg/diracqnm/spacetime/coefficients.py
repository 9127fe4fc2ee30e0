from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .black_hole_params import ArrayLike, BlackHoleParams
from .horizons import HorizonSet, Side
from .regge_wheeler import ReggeWheelerMap, regge_wheeler


@dataclass(frozen=True)
class CoefficientFunctions:
    """
    The coefficients of the separated radial Dirac system

        𝔞 = √Δ_r/(r² + a²),  c = (aEk + 𝔮Qr)/(r² + a²),  𝔟 = 𝔪r√Δ_r/(r² + a²),

    as functions of the radius and of the Regge-Wheeler coordinate.
    """

    rw_map: ReggeWheelerMap

    @property
    def params(self) -> BlackHoleParams:
        return self.rw_map.params

    @property
    def horizons(self) -> HorizonSet:
        return self.rw_map.horizons

    def a_of_r(self, r: ArrayLike) -> ArrayLike:
        p = self.params
        return np.sqrt(np.maximum(p.delta_r(r), 0.0)) / (r**2 + p.a**2)

    def c_of_r(self, r: ArrayLike, k: float) -> ArrayLike:
        p = self.params
        return (p.a * p.E * k + p.q * p.Q * r) / (r**2 + p.a**2)

    def b_of_r(self, r: ArrayLike) -> ArrayLike:
        return self.params.m * r * self.a_of_r(r)

    def dx_weight(self, r: ArrayLike) -> ArrayLike:
        """dr/dx = Δ_r/(r² + a²)."""
        p = self.params
        return p.delta_r(r) / (r**2 + p.a**2)

    def a_prime_of_r(self, r: ArrayLike) -> ArrayLike:
        """d𝔞/dx at the radius r."""
        p = self.params
        rho2 = r**2 + p.a**2
        delta = np.maximum(p.delta_r(r), 0.0)
        return p.delta_r_prime(r) * np.sqrt(delta) / (2.0 * rho2**2) - 2.0 * r * delta**1.5 / rho2**3

    def c_prime_of_r(self, r: ArrayLike, k: float) -> ArrayLike:
        """dc/dx at the radius r."""
        p = self.params
        rho2 = r**2 + p.a**2
        dc_dr = p.q * p.Q / rho2 - 2.0 * r * (p.a * p.E * k + p.q * p.Q * r) / rho2**2
        return self.dx_weight(r) * dc_dr

    def a_of_x(self, x: float) -> float:
        return float(self.a_of_r(self.rw_map.r_of_x(x)))

    def c_of_x(self, x: float, k: float) -> float:
        return float(self.c_of_r(self.rw_map.r_of_x(x), k))

    def b_of_x(self, x: float) -> float:
        return float(self.b_of_r(self.rw_map.r_of_x(x)))

    def omega(self, side: Side, k: float) -> float:
        return self.horizons.omega(side, k)

    def sampled_asymptotic(self, side: Side) -> float:
        """𝔞(x)e^{−κ_± x} sampled at ±(X0 + 5/|κ_±|)."""
        kappa = self.horizons.kappa(side)
        x = side.sign * (self.rw_map.X0 + 5.0 / abs(kappa))
        H = self.horizons
        p = self.params
        # Δ_r from the horizon distance keeps full relative precision this close to the root
        s = self.rw_map.horizon_distance(x, side)
        r = H.root(side) - side.sign * s
        others = np.prod([abs(r - rs) for rs in H.roots if rs != H.root(side)])
        frak_a = np.sqrt(p.Lambda / 3.0 * others * s) / (r**2 + p.a**2)
        return float(frak_a * np.exp(-kappa * x))


def coeff_functions(
    p: BlackHoleParams, H: HorizonSet, rw_map: Optional[ReggeWheelerMap] = None
) -> CoefficientFunctions:
    if rw_map is None:
        rw_map = regge_wheeler(p, H)
    if rw_map.horizons != H or H.params != p:
        raise ValueError("Coefficient functions need the horizons and coordinate map of the same parameter set")

    return CoefficientFunctions(rw_map)
