from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.special import loggamma

from ..spacetime.horizons import Side
from .horizon_series import (
    DEFAULT_ORDER,
    HorizonSeries,
    evaluate_outgoing,
    gamma_argument,
    horizon_series,
    pole_index,
)
from .integration import integrate_interior
from .log_spinor import LogSpinor, ScaledComplex, determinant
from .radial_problem import RadialProblem


@dataclass(frozen=True)
class WronskianValue:
    """
    The Wronskian of the outgoing solutions at the matching point, with the product of the normalizing
    1/Γ factors it carries.
    """

    value: ScaledComplex
    normalization: ScaledComplex
    x_match: float
    # Largest relative change of W between the matching points x = −X0/2, 0, X0/2
    drift: Optional[float]
    # An outgoing solution vanishes identically, which happens only at exceptional points
    degenerate: bool

    @property
    def W(self) -> complex:
        return self.value.value

    @property
    def residual(self) -> float:
        """|W| relative to the normalization factors, the quantity a zero is accepted on."""
        if self.degenerate or self.value.mantissa == 0:
            return 0.0
        return abs(self.value.ratio(self.normalization))

    def to_record(self) -> Dict[str, Any]:
        W = self.W
        return {
            "W_re": W.real,
            "W_im": W.imag,
            "residual": self.residual,
            "drift": self.drift,
            "degenerate": self.degenerate,
        }


def free_wronskian_scale(prob: RadialProblem) -> ScaledComplex:
    """
    v₁⁺(0)·v₂⁻(0), the Wronskian of the free system 𝔞 ≡ 0, c ≡ Ω_±, raised to the number of outgoing
    solutions per side. It vanishes at the exceptional points.
    """
    log_scale = 0.0j
    for side in Side.all_values():
        z = gamma_argument(prob.lam, prob.Omega(side), prob.background.horizons.kappa(side), side)
        if pole_index(z) is not None:
            return ScaledComplex(0.0, 0.0)
        log_scale += -loggamma(z)

    return ScaledComplex(len(_seeds(prob)) * complex(log_scale), 1.0)


def _series_scale(series: Sequence[HorizonSeries]) -> ScaledComplex:
    return ScaledComplex(complex(sum(s.log_norm for s in series)), 1.0)


def _seeds(prob: RadialProblem) -> List[int]:
    return [0, 1] if prob.full_system else [0]


def _checkpoints(side: Side, X0: float, with_drift: bool) -> List[float]:
    if not with_drift:
        return [0.0]
    return [side.sign * X0 / 2.0, 0.0, -side.sign * X0 / 2.0]


def _outgoing_at_checkpoints(
    prob: RadialProblem, series: HorizonSeries, checkpoints: List[float]
) -> List[LogSpinor]:
    bg = prob.background
    side = series.side
    x = side.sign * bg.X0
    r = bg.horizons.root(side) - side.sign * bg.rw_map.horizon_distance(x, side)
    f = evaluate_outgoing(series, x)

    values = []
    for i, x_next in enumerate(checkpoints):
        f = integrate_interior(prob, f, x, x_next, r_start=r if i == 0 else None)
        values.append(f)
        x = x_next
    return values


def wronskian(prob: RadialProblem, with_drift: bool = False, J: int = DEFAULT_ORDER) -> WronskianValue:
    """
    W(λ, ω, k) = det(f⁺, f⁻) at x = 0, the determinant of the outgoing solutions at r_+ and at r_-.

    For the four-component system the columns are the two outgoing solutions at r_+ followed by the two at
    r_-. Every solution carries the factor 1/Γ that makes W entire in (λ, ω).

    Args:
        prob: The radial problem at (λ, ω, k).
        with_drift: Also match at x = ±X0/2 and report the relative change of W.
        J: The initial order of the horizon series.

    Returns:
        The Wronskian.
    """
    X0 = prob.background.X0
    plus_series = [horizon_series(prob, Side.PLUS, J, seed, limit_mode=True) for seed in _seeds(prob)]
    minus_series = [horizon_series(prob, Side.MINUS, J, seed, limit_mode=True) for seed in _seeds(prob)]
    normalization = _series_scale(plus_series + minus_series)

    if any(s.is_zero for s in plus_series + minus_series):
        logging.getLogger().info(f"Outgoing solution vanishes identically at lambda={prob.lam}, omega={prob.omega}")
        return WronskianValue(ScaledComplex(0.0, 0.0), normalization, 0.0, None, degenerate=True)

    plus_points = _checkpoints(Side.PLUS, X0, with_drift)
    minus_points = _checkpoints(Side.MINUS, X0, with_drift)
    plus = [_outgoing_at_checkpoints(prob, s, plus_points) for s in plus_series]
    minus = [_outgoing_at_checkpoints(prob, s, minus_points) for s in minus_series]

    values = {}
    for i, x in enumerate(plus_points):
        j = minus_points.index(x)
        values[x] = determinant([p[i] for p in plus] + [m[j] for m in minus])

    W = values[0.0]
    drift = None
    if with_drift:
        scale = max(abs(W.ratio(normalization)), np.finfo(float).tiny)
        drift = max(abs(v.ratio(normalization) - W.ratio(normalization)) for v in values.values()) / scale

    return WronskianValue(W, normalization, 0.0, drift, degenerate=False)
