from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
import numpy.typing as npt

from ..error.degenerate_horizons import DegenerateHorizons
from ..error.trapping_errors import NoPhotonSphere
from ..tolerances import Tolerances
from .black_hole_params import ArrayLike, BlackHoleParams, validate_params


class Side(Enum):
    """The two horizons bounding the exterior region, r_+ at x = +∞ and r_- at x = −∞."""

    PLUS = 1
    MINUS = -1

    @property
    def sign(self) -> int:
        return self.value

    @classmethod
    def all_values(cls) -> List[Side]:
        return [e for e in cls]


def photon_sphere_radius(p: BlackHoleParams) -> float:
    disc = (1.5 * p.M) ** 2 - 2.0 * p.Q**2
    if disc <= 0:
        raise NoPhotonSphere(f"No photon sphere: 2Q^2 = {2 * p.Q**2} is not below (3M/2)^2 = {(1.5 * p.M) ** 2}")

    return float(1.5 * p.M + np.sqrt(disc))


@dataclass(frozen=True)
class HorizonSet:
    params: BlackHoleParams
    r_n: float
    r_c: float
    r_minus: float
    r_plus: float
    kappa_n: float
    kappa_c: float
    kappa_minus: float
    kappa_plus: float
    # Integration constant of the Regge-Wheeler coordinate, fixed by x(r_0) = 0
    anchor: float

    @property
    def roots(self) -> npt.NDArray[np.float64]:
        return np.array([self.r_n, self.r_c, self.r_minus, self.r_plus])

    @property
    def kappas(self) -> npt.NDArray[np.float64]:
        return np.array([self.kappa_n, self.kappa_c, self.kappa_minus, self.kappa_plus])

    def root(self, side: Side) -> float:
        return self.r_plus if side is Side.PLUS else self.r_minus

    def kappa(self, side: Side) -> float:
        return self.kappa_plus if side is Side.PLUS else self.kappa_minus

    def omega(self, side: Side, k: float) -> float:
        """Ω_±(k) = (aEk + 𝔮Qr_±)/(r_±² + a²)."""
        p = self.params
        r = self.root(side)
        return (p.a * p.E * k + p.q * p.Q * r) / (r**2 + p.a**2)

    def log_coordinate(self, r: ArrayLike) -> ArrayLike:
        """x(r) = Σ_σ ln|r − r_σ|/(2κ_σ) + C."""
        x: ArrayLike = self.anchor
        for r_sigma, kappa in zip(self.roots, self.kappas):
            x = x + np.log(np.abs(r - r_sigma)) / (2.0 * kappa)
        return x

    def chart_prefactor(self, side: Side) -> float:
        """
        g_±(0) in w² = s·g_±(s), where w = e^{κ_± x} and s = |r − r_±|.
        """
        kappa_side = self.kappa(side)
        r_side = self.root(side)
        log_g = 2.0 * kappa_side * self.anchor
        for r_sigma, kappa in zip(self.roots, self.kappas):
            if r_sigma == r_side:
                continue
            log_g += (kappa_side / kappa) * np.log(abs(r_side - r_sigma))
        return float(np.exp(log_g))

    def a_asymptotic(self, side: Side) -> float:
        """a_± = lim 𝔞(x)e^{−κ_± x} as x → ±∞."""
        r = self.root(side)
        a2 = self.params.a ** 2
        return float(np.sqrt(2.0 * abs(self.kappa(side)) / ((r**2 + a2) * self.chart_prefactor(side))))

    def b_asymptotic(self, side: Side) -> float:
        return self.params.m * self.root(side) * self.a_asymptotic(side)

    def c_asymptotic(self, side: Side, k: float) -> float:
        """Leading coefficient of c(x, k) − Ω_±(k) in powers of e^{2κ_± x}."""
        p = self.params
        r = self.root(side)
        numerator = p.a * p.E * k + p.q * p.Q * r
        dc_dr = (p.q * p.Q * (r**2 + p.a**2) - 2.0 * r * numerator) / (r**2 + p.a**2) ** 2
        return float(-side.sign * dc_dr / self.chart_prefactor(side))

    def to_record(self) -> Dict[str, Any]:
        return {
            "r_n": self.r_n,
            "r_c": self.r_c,
            "r_minus": self.r_minus,
            "r_plus": self.r_plus,
            "kappa_n": self.kappa_n,
            "kappa_c": self.kappa_c,
            "kappa_minus": self.kappa_minus,
            "kappa_plus": self.kappa_plus,
            "a_minus": self.a_asymptotic(Side.MINUS),
            "a_plus": self.a_asymptotic(Side.PLUS),
            "b_minus": self.b_asymptotic(Side.MINUS),
            "b_plus": self.b_asymptotic(Side.PLUS),
        }


def horizon_roots(p: BlackHoleParams, tolerances: Optional[Tolerances] = None) -> HorizonSet:
    """
    Roots of Δ_r from the eigenvalues of its companion matrix, each polished by Newton steps.

    Args:
        p: An admissible parameter set.
        tolerances: Numerical tolerances, the process defaults when omitted.

    Returns:
        The sorted roots r_n < 0 < r_c < r_- < r_+ with their surface gravities.
    """
    tol = tolerances or Tolerances.from_env()
    validate_params(p).require()

    raw = np.roots(p.delta_r_coefficients())
    scale = float(np.max(np.abs(raw)))
    if np.any(np.abs(raw.imag) > 1e-7 * scale):
        raise DegenerateHorizons(f"Delta_r has complex roots {raw}: parameter set degenerate / near-extremal")

    roots = np.sort(raw.real)
    for _ in range(4):
        step = p.delta_r(roots) / p.delta_r_prime(roots)
        roots = roots - step
        if np.all(np.abs(step) <= tol.root_polish * scale):
            break

    gaps = np.diff(roots)
    if np.min(gaps) < 1e-6 * scale or not roots[0] < 0 < roots[1]:
        raise DegenerateHorizons(f"Delta_r roots {roots} are not simple and separated: near-extremal parameter set")

    kappas = p.delta_r_prime(roots) / (2.0 * (roots**2 + p.a**2))

    partial = HorizonSet(p, *(float(r) for r in roots), *(float(k) for k in kappas), anchor=0.0)
    r_0 = photon_sphere_radius(p)
    if not partial.r_minus < r_0 < partial.r_plus:
        raise NoPhotonSphere(f"Photon sphere r_0 = {r_0} lies outside ({partial.r_minus}, {partial.r_plus})")

    return replace(partial, anchor=-float(partial.log_coordinate(r_0)))
