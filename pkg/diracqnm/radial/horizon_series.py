from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np
import numpy.typing as npt
from scipy.special import loggamma

from ..error.outside_domain import OutsideDomain
from ..error.series_errors import GammaPole, RadiusExceeded
from ..spacetime.horizons import Side
from .log_spinor import LogSpinor
from .radial_problem import RadialProblem

DEFAULT_ORDER = 40
# Tail bound above which a series at the maximal order is rejected rather than accepted with a warning
MAX_ACCEPTED_TAIL = 1e-10
# Relative distance of the gamma argument from a pole treated as exact
POLE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class HorizonSeries:
    """
    The outgoing solution f = exp(log_norm)·e^{iε(λ − Ω)x}·Σ_j v_j e^{jκx} at one horizon, ε = ±1.

    `log_norm` is the logarithm of 1/Γ(z) with z = 1 − 2ε(λ − Ω)/(iκ), which makes the solution entire in
    λ. At a pole of Γ(z) the series holds the limiting solution instead and `exceptional` is set; its leading
    power is then `leading_order` and `log_norm` is 0.
    """

    side: Side
    seed: int
    lam: complex
    Omega: float
    kappa: float
    radius: float
    coefficients: npt.NDArray[np.complex128]
    log_norm: complex
    tail_estimate: float
    exceptional: bool
    leading_order: int

    @property
    def order(self) -> int:
        return self.coefficients.shape[1] - 1

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coefficients)

    def to_record(self) -> Dict[str, Any]:
        return {
            "side": self.side.name.lower(),
            "seed": self.seed,
            "order": self.order,
            "tail_estimate": self.tail_estimate,
            "exceptional": self.exceptional,
            "leading_order": self.leading_order,
        }


def gamma_argument(lam: complex, Omega: float, kappa: float, side: Side) -> complex:
    return complex(1.0 - side.sign * 2.0 * (lam - Omega) / (1j * kappa))


def pole_index(z: complex) -> Optional[int]:
    """n when z = −n for an integer n ≥ 0 within rounding, else None."""
    n = round(-z.real)
    if n >= 0 and abs(z + n) <= POLE_TOLERANCE * max(1.0, abs(z)):
        return int(n)
    return None


def _recursion(
    prob: RadialProblem,
    side: Side,
    order: int,
    start: npt.NDArray[np.complex128],
    start_order: int,
) -> npt.NDArray[np.complex128]:
    """
    Solve [κj + i(λ − Ω)(ε − s_i)]v_{i,j} = −is_i R_{i,j} for j > start_order, v_{start_order} = start.

    R_j = Σ_{l≥1}(c_l + ω a_l K_a + b_l K_b)v_{j−l} collects the coupling to the lower coefficients.
    """
    chart = prob.background.chart(side)
    if order > chart.order:
        raise RadiusExceeded(f"Requested series order {order} exceeds the chart order {chart.order}")

    _, K_a, K_b = prob.matrices
    s = prob.signature
    eps = side.sign
    kappa = chart.kappa
    shift = prob.lam - prob.Omega(side)
    c = chart.c_coeffs(prob.k)
    a = chart.a_coeffs
    b = chart.b_coeffs()

    v = np.zeros((prob.dim, order + 1), dtype=complex)
    v[:, start_order] = start
    for j in range(start_order + 1, order + 1):
        lower = v[:, :j][:, ::-1]
        R = lower @ c[1 : j + 1] + prob.omega * (K_a @ (lower @ a[1 : j + 1]))
        if prob.massive:
            R = R + K_b @ (lower @ b[1 : j + 1])
        v[:, j] = -1j * s * R / (kappa * j + 1j * shift * (eps - s))

    return v


def _tail(v: npt.NDArray[np.complex128], radius: float) -> float:
    """Geometric bound on the remainder at |w| = radius, relative to the partial sum."""
    terms = np.linalg.norm(v, axis=0) * radius ** np.arange(v.shape[1])
    total = float(np.sum(terms))
    if total == 0.0 or terms[-1] == 0.0:
        return 0.0
    span = min(5, v.shape[1] - 1)
    if terms[-1 - span] == 0.0:
        return 0.0
    ratio = float((terms[-1] / terms[-1 - span]) ** (1.0 / span))
    if ratio >= 1.0:
        return float("inf")
    return float(terms[-1] * ratio / (1.0 - ratio)) / total


def horizon_series(
    prob: RadialProblem,
    side: Side,
    J: int = DEFAULT_ORDER,
    seed: int = 0,
    limit_mode: bool = False,
) -> HorizonSeries:
    """
    Taylor coefficients of the normalized outgoing solution at the horizon r_±.

    The order starts at J and is doubled, up to the order of the horizon chart, until the tail estimate at
    the validated radius drops below the series tolerance.

    Args:
        prob: The radial problem.
        side: Which horizon.
        J: The initial truncation order.
        seed: Which of the free leading components is set to one; 0 or 1 for the four-component system.
        limit_mode: At a pole of the normalizing gamma function, return the limiting solution instead of
            raising `GammaPole`.

    Returns:
        The series.
    """
    chart = prob.background.chart(side)
    tol = prob.background.tolerances
    s = prob.signature
    eps = side.sign
    free: List[int] = [i for i in range(prob.dim) if s[i] == eps]
    if not 0 <= seed < len(free):
        raise ValueError(f"Seed index {seed} out of range for {len(free)} free components")

    Omega = prob.Omega(side)
    z = gamma_argument(prob.lam, Omega, chart.kappa, side)
    n = pole_index(z)
    if n is not None and not limit_mode:
        raise GammaPole(
            f"Gamma function pole at lambda={prob.lam}: 1 - 2eps(lambda - Omega)/(i kappa) = -{n} on side {side.name}"
        )

    order = max(J, 1 if n is None else n + 2)
    while True:
        start = np.zeros(prob.dim, dtype=complex)
        if n is None:
            start[free[seed]] = 1.0
            v = _recursion(prob, side, order, start, 0)
            log_norm = complex(-loggamma(z))
            leading = 0
        else:
            v = _limit_coefficients(prob, side, order, free[seed], n)
            log_norm = 0.0j
            leading = n + 1

        tail = _tail(v, chart.radius)
        if tail <= tol.series_tail or order >= chart.order:
            break
        order = min(2 * order, chart.order)

    if tail > MAX_ACCEPTED_TAIL:
        raise RadiusExceeded(f"Horizon series on side {side.name} does not converge at |w|={chart.radius}: tail {tail}")
    if tail > tol.series_tail:
        logging.getLogger().warning(
            f"Horizon series on side {side.name} truncated at order {order} with tail estimate {tail:.3g}"
        )

    return HorizonSeries(
        side=side,
        seed=seed,
        lam=complex(prob.lam),
        Omega=Omega,
        kappa=chart.kappa,
        radius=chart.radius,
        coefficients=v,
        log_norm=log_norm,
        tail_estimate=tail,
        exceptional=n is not None,
        leading_order=leading,
    )


def _limit_coefficients(prob: RadialProblem, side: Side, order: int, lead: int, n: int) -> npt.NDArray[np.complex128]:
    """
    Limit of Γ(z)^{-1}·v_j as z → −n.

    Every coefficient below j0 = n + 1 vanishes in the limit. At j0 the components with s_i = −ε pick up the
    residue of the vanishing denominator κ(z + n), and the recursion continues from there.
    """
    s = prob.signature
    eps = side.sign
    kappa = prob.background.chart(side).kappa
    j0 = n + 1

    start = np.zeros(prob.dim, dtype=complex)
    start[lead] = 1.0
    unnormalized = _recursion_numerators(prob, side, j0, start)
    residue = (-1) ** n * math.factorial(n) * unnormalized / kappa
    limit = np.where(s == -eps, residue, 0.0)

    return _recursion(prob, side, order, limit, j0)


def _recursion_numerators(
    prob: RadialProblem, side: Side, j0: int, start: npt.NDArray[np.complex128]
) -> npt.NDArray[np.complex128]:
    """−is_i R_{i,j0} of the unnormalized series, whose denominators below j0 are all nonzero."""
    chart = prob.background.chart(side)
    _, K_a, K_b = prob.matrices
    s = prob.signature
    v = _recursion(prob, side, j0 - 1, start, 0) if j0 > 1 else start[:, None]
    lower = v[:, ::-1]
    c = chart.c_coeffs(prob.k)
    R = lower @ c[1 : j0 + 1] + prob.omega * (K_a @ (lower @ chart.a_coeffs[1 : j0 + 1]))
    if prob.massive:
        R = R + K_b @ (lower @ chart.b_coeffs()[1 : j0 + 1])
    return -1j * s * R


def evaluate_outgoing(series: HorizonSeries, x: float) -> LogSpinor:
    """
    The outgoing solution at x, inside the disc |e^{κx}| ≤ radius where the series is validated.
    """
    w = float(np.exp(series.kappa * x))
    if w > series.radius * (1.0 + 1e-9):
        raise OutsideDomain(f"x={x} lies outside the validated disc of the {series.side.name} horizon series")

    powers = w ** np.arange(series.order + 1)
    vector = series.coefficients @ powers
    log_scale = series.log_norm + 1j * series.side.sign * (series.lam - series.Omega) * x

    return LogSpinor.from_vector(vector, log_scale)
