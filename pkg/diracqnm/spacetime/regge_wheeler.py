from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Tuple, Union

import numpy as np
import numpy.typing as npt

from ..error.outside_domain import OutsideDomain
from .black_hole_params import ArrayLike, BlackHoleParams
from .horizons import HorizonSet, Side, photon_sphere_radius

# Fraction of (r_+ − r_-) within which a point counts as close to a horizon
HORIZON_WINDOW_FRACTION = 0.05

_MAX_INVERSION_STEPS = 200


def chart_log_terms(
    H: HorizonSet, side: Side, s: npt.NDArray[Any]
) -> Tuple[npt.NDArray[Any], npt.NDArray[Any], npt.NDArray[Any]]:
    """
    Write e^{2κ_± x} = s·e^{G(s)} with s = |r − r_±|.

    Returns:
        G(s), G'(s) and the product of the distances |r − r_σ| to the three other roots.
    """
    kappa_side = H.kappa(side)
    r_side = H.root(side)
    G = np.full_like(s, 2.0 * kappa_side * H.anchor)
    dG = np.zeros_like(s)
    others = np.ones_like(s)
    for r_sigma, kappa in zip(H.roots, H.kappas):
        if r_sigma == r_side:
            continue
        orient = np.sign(r_side - r_sigma)
        d = orient * (r_side - side.sign * s - r_sigma)
        G = G + (kappa_side / kappa) * np.log(d)
        dG = dG + (kappa_side / kappa) * (-orient * side.sign) / d
        others = others * d

    return G, dG, others


def chart_inverse(H: HorizonSet, side: Side, w2: npt.NDArray[Any], steps: int = 60) -> npt.NDArray[Any]:
    """
    Solve s·e^{G(s)} = w² for the horizon distance s, for real or complex w².
    """
    w2 = np.asarray(w2, dtype=complex)
    G0, _, _ = chart_log_terms(H, side, np.zeros_like(w2))
    s = w2 * np.exp(-G0)
    for _ in range(steps):
        G, dG, _ = chart_log_terms(H, side, s)
        eG = np.exp(G)
        step = (s * eG - w2) / (eG * (1.0 + s * dG))
        s = s - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(np.abs(s), 1e-300)):
            break

    return s


@dataclass(frozen=True)
class ReggeWheelerMap:
    """
    The Regge-Wheeler coordinate x on (r_-, r_+), dx/dr = (r² + a²)/Δ_r, with x(r_anchor) = 0.

    `X0` is the smallest value with |r(x) − r_±| < 0.05(r_+ − r_-) whenever ±x > X0.
    """

    horizons: HorizonSet
    r_anchor: float
    X0: float

    @property
    def params(self) -> BlackHoleParams:
        return self.horizons.params

    def _check_radius(self, r: ArrayLike) -> None:
        H = self.horizons
        if np.any(np.asarray(r) <= H.r_minus) or np.any(np.asarray(r) >= H.r_plus):
            raise OutsideDomain(f"Radius {r} is outside the exterior region ({H.r_minus}, {H.r_plus})")

    def x_of_r(self, r: ArrayLike) -> ArrayLike:
        self._check_radius(r)
        return self.horizons.log_coordinate(r)

    def dx_dr(self, r: ArrayLike) -> ArrayLike:
        p = self.params
        return (r**2 + p.a**2) / p.delta_r(r)

    def horizon_distance(self, x: float, side: Side) -> float:
        """|r(x) − r_±|, accurate even where r(x) is closer to the horizon than double precision resolves."""
        if not np.isfinite(x):
            raise OutsideDomain(f"Cannot invert the Regge-Wheeler coordinate at x={x}")
        w2 = np.exp(2.0 * self.horizons.kappa(side) * x)
        return float(chart_inverse(self.horizons, side, np.array([w2]))[0].real)

    def _r_of_scalar(self, x: float) -> float:
        H = self.horizons
        if not np.isfinite(x):
            raise OutsideDomain(f"Cannot invert the Regge-Wheeler coordinate at x={x}")
        if x >= self.X0:
            return H.r_plus - self.horizon_distance(x, Side.PLUS)
        if x <= -self.X0:
            return H.r_minus + self.horizon_distance(x, Side.MINUS)

        # Safeguarded Newton with bisection fallback on the bracket (r_-, r_+)
        lo, hi = H.r_minus, H.r_plus
        r = self.r_anchor if lo < self.r_anchor < hi else 0.5 * (lo + hi)
        for _ in range(_MAX_INVERSION_STEPS):
            residual = float(H.log_coordinate(r)) - x
            if residual > 0:
                hi = r
            else:
                lo = r
            candidate = r - residual / float(self.dx_dr(r))
            if not lo < candidate < hi:
                candidate = 0.5 * (lo + hi)
            if abs(candidate - r) <= 4e-16 * H.r_plus:
                return candidate
            r = candidate

        return r

    def r_of_x(self, x: Union[float, npt.NDArray[np.float64]]) -> Union[float, npt.NDArray[np.float64]]:
        if np.ndim(x) == 0:
            return self._r_of_scalar(float(x))
        return np.array([self._r_of_scalar(float(xi)) for xi in np.asarray(x).ravel()]).reshape(np.shape(x))


def regge_wheeler(p: BlackHoleParams, H: HorizonSet) -> ReggeWheelerMap:
    """
    Build the Regge-Wheeler coordinate anchored at the photon sphere radius.

    Args:
        p: The parameter set the horizons were computed from.
        H: The horizons of `p`.

    Returns:
        The forward and inverse coordinate maps with the horizon window X0.
    """
    if H.params != p:
        raise ValueError("The horizon set was computed for a different parameter set")

    r_anchor = photon_sphere_radius(p)
    delta = HORIZON_WINDOW_FRACTION * (H.r_plus - H.r_minus)
    X0 = max(float(H.log_coordinate(H.r_plus - delta)), -float(H.log_coordinate(H.r_minus + delta)))

    return ReggeWheelerMap(horizons=H, r_anchor=r_anchor, X0=X0)
