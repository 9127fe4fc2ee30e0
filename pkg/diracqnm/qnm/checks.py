from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pandas import DataFrame

from ..angular.angular_mode import AngularMode, exact_eigenvalue_a0
from ..angular.eigenvalue import DEFAULT_BASIS_SIZE, eigenvalue, eigenvalue_bounds, eigenvalue_near
from ..error.degenerate_horizons import DegenerateHorizons
from ..error.trapping_errors import NoPhotonSphere
from ..parallel import ordered_map
from ..radial.horizon_series import evaluate_outgoing, horizon_series
from ..radial.integration import integrate_interior
from ..radial.log_spinor import LogSpinor
from ..radial.radial_problem import RadialProblem
from ..radial.schrodinger import schrodinger_reduction_check
from ..radial.wronskian import free_wronskian_scale, wronskian
from ..spacetime.background import Background
from ..spacetime.black_hole_params import BlackHoleParams, validate_params
from ..spacetime.horizons import Side, horizon_roots
from ..tolerances import Tolerances
from .solver import STRIP_HALF_WIDTH

BENCHMARK_KS = (-2.5, -1.5, -0.5, 0.5, 1.5, 2.5)
# Sampling ranges of the benchmark points, inside the strip |Im λ| < ν₀
BENCHMARK_LAMBDA_RE = (0.2, 3.0)
BENCHMARK_LAMBDA_IM = (-0.5, 0.5)
BENCHMARK_OMEGA = (0.5, 6.0)
# Offsets beyond X0 of the comparison point and of the deep starting point of the series oracle
ORACLE_NEAR = 1.0
ORACLE_DEEP = 3.0


@dataclass(frozen=True)
class BenchmarkPoint:
    lam: complex
    omega: complex
    k: float

    def to_record(self) -> Dict[str, Any]:
        return {
            "lambda_re": self.lam.real,
            "lambda_im": self.lam.imag,
            "omega_re": self.omega.real,
            "omega_im": self.omega.imag,
            "k": self.k,
        }


def sample_benchmark(seed: int, n: int) -> List[BenchmarkPoint]:
    """`n` reproducible random spectral points (λ, ω, k) in the strip, drawn from a generator seeded by `seed`."""
    if n < 0:
        raise ValueError(f"The number of benchmark points must be nonnegative, got {n}")
    if not BENCHMARK_LAMBDA_IM[1] < STRIP_HALF_WIDTH:
        raise ValueError("The benchmark range leaves the strip")

    rng = np.random.default_rng(seed)
    points = []
    for _ in range(n):
        lam = complex(rng.uniform(*BENCHMARK_LAMBDA_RE), rng.uniform(*BENCHMARK_LAMBDA_IM))
        omega = complex(rng.uniform(*BENCHMARK_OMEGA), 0.0)
        k = float(BENCHMARK_KS[rng.integers(len(BENCHMARK_KS))])
        points.append(BenchmarkPoint(lam, omega, k))
    return points


def _relative_difference(f: LogSpinor, g: LogSpinor) -> float:
    """|f − g|/|g| for spinors in log-scaled form."""
    if g.is_zero:
        return 0.0 if f.is_zero else float("inf")
    return float(np.linalg.norm(np.exp(f.log_scale - g.log_scale) * f.vector - g.vector))


def series_oracle(
    background: Background, point: BenchmarkPoint, with_drift: bool = True
) -> Dict[str, Any]:
    """
    Compare the horizon series at x = ±(X0 + 1) with the series evaluated at ±(X0 + 3) and integrated out to
    ±(X0 + 1), on both sides; optionally also report the matching-point drift of the Wronskian.
    """
    prob = RadialProblem(background, point.lam, point.omega, point.k)
    record = point.to_record()
    for side in Side.all_values():
        series = horizon_series(prob, side)
        x_near = side.sign * (background.X0 + ORACLE_NEAR)
        x_deep = side.sign * (background.X0 + ORACLE_DEEP)
        r_deep = background.horizons.root(side) - side.sign * background.rw_map.horizon_distance(x_deep, side)
        integrated = integrate_interior(prob, evaluate_outgoing(series, x_deep), x_deep, x_near, r_start=r_deep)
        record[f"series_error_{side.name.lower()}"] = _relative_difference(
            integrated, evaluate_outgoing(series, x_near)
        )
    if with_drift:
        record["drift"] = wronskian(prob, with_drift=True).drift
    return record


def series_oracle_table(
    p: BlackHoleParams,
    points: Sequence[BenchmarkPoint],
    workers: int = 1,
    show_progress: bool = False,
    tolerances: Optional[Tolerances] = None,
) -> DataFrame:
    bg = Background.build(p, tolerances)
    records = ordered_map(
        lambda point: series_oracle(bg, point), points, workers=workers, show_progress=show_progress, desc="oracle"
    )
    return DataFrame(records)


def real_axis_scan(
    p: BlackHoleParams,
    ks: Sequence[float],
    lam_grid: Sequence[float],
    omega_grid: Sequence[float],
    workers: int = 1,
    show_progress: bool = False,
    tolerances: Optional[Tolerances] = None,
) -> DataFrame:
    """
    Smallest |W|/|v₁⁺(0)v₂⁻(0)| over a grid of real (λ, ω), one row per k.

    Real λ carries no resonance, so the minimum stays bounded away from 0.
    """
    bg = Background.build(p, tolerances)
    grid = [(float(k), float(lam), float(omega)) for k in ks for lam in lam_grid for omega in omega_grid]

    def scaled(item: Tuple[float, float, float]) -> float:
        k, lam, omega = item
        prob = RadialProblem(bg, complex(lam), complex(omega), k)
        return abs(wronskian(prob).value.ratio(free_wronskian_scale(prob)))

    values = ordered_map(scaled, grid, workers=workers, show_progress=show_progress, desc="real axis")

    rows = []
    for k in ks:
        entries = [(v, item) for v, item in zip(values, grid) if item[0] == float(k)]
        smallest, (_, lam, omega) = min(entries, key=lambda e: e[0])
        rows.append(
            {"k": float(k), "min_scaled_wronskian": smallest, "lambda": lam, "omega": omega, "points": len(entries)}
        )
        logging.getLogger().info(
            f"Real-axis scan k={k}: min |W|/scale = {smallest:.3g} at lambda={lam}, omega={omega}"
        )

    return DataFrame(rows)


def reduction_table(
    p: BlackHoleParams, points: Sequence[BenchmarkPoint], tolerances: Optional[Tolerances] = None
) -> DataFrame:
    """The Schrödinger factorization residual and the far-field potentials at real benchmark points."""
    bg = Background.build(p.with_changes(m=0.0), tolerances)
    rows = []
    for point in points:
        check = schrodinger_reduction_check(RadialProblem(bg, complex(point.lam.real), point.omega, point.k))
        rows.append({**point.to_record(), **check.to_record()})
    return DataFrame(rows)


def angular_a0_table(
    ks: Sequence[float], ls: Sequence[int], N: int = DEFAULT_BASIS_SIZE, Lambda: float = 0.04
) -> DataFrame:
    """Distance of the discrete a = 0 eigenvalues from sgn(l)(|k| − 1/2 + |l|)."""
    p = BlackHoleParams(M=1.0, Q=0.0, a=0.0, Lambda=Lambda)
    rows = []
    for k in ks:
        for l in ls:
            mode = AngularMode(float(k), int(l))
            exact = exact_eigenvalue_a0(mode)
            mu = eigenvalue_near(p, mode, 1.0, exact, N)
            rows.append(
                {"k": mode.k, "l": mode.l, "mu_re": mu.real, "mu_im": mu.imag, "exact": exact, "error": abs(mu - exact)}
            )
    return DataFrame(rows)


def bounds_table(
    p: BlackHoleParams,
    ks: Sequence[float],
    ls: Sequence[int],
    lams: Sequence[complex],
    N: int = DEFAULT_BASIS_SIZE,
    tolerances: Optional[Tolerances] = None,
) -> DataFrame:
    """
    |μ_kl(λ)| against its rotation-uniform bounds.

    Raises:
        ValueError: For a non-real λ, where the bounds are not established.
    """
    complex_lams = [lam for lam in lams if complex(lam).imag != 0]
    if complex_lams:
        raise ValueError(f"The eigenvalue bounds hold for real lambda only, got {complex_lams}")

    rows = []
    for k in ks:
        for l in ls:
            mode = AngularMode(float(k), int(l))
            for lam in lams:
                mu = eigenvalue(p, mode, complex(lam).real, N, tolerances).mu
                lower, upper = eigenvalue_bounds(p, mode, complex(lam).real)
                rows.append(
                    {
                        "k": mode.k,
                        "l": mode.l,
                        "lambda": complex(lam).real,
                        "abs_mu": abs(mu),
                        "lower": lower,
                        "upper": upper,
                        "within": lower <= abs(mu) <= upper,
                    }
                )
    return DataFrame(rows)


def random_params(seed: int, n: int) -> List[BlackHoleParams]:
    """`n` reproducible admissible parameter sets with M = 1, drawn by rejection."""
    rng = np.random.default_rng(seed)
    found: List[BlackHoleParams] = []
    while len(found) < n:
        p = BlackHoleParams(
            M=1.0,
            Q=float(rng.uniform(0.0, 0.6)),
            a=float(rng.uniform(0.0, 0.2)),
            Lambda=float(rng.uniform(0.002, 0.09)),
        )
        if validate_params(p).admissible:
            found.append(p)
    return found


def horizons_table(params: Sequence[BlackHoleParams], tolerances: Optional[Tolerances] = None) -> DataFrame:
    """
    Consistency of the computed horizons with the coefficients of Δ_r: the residuals Δ_r(r_σ), the vanishing
    root sum, and Σ 1/κ_σ = 0 from the partial fractions of (r² + a²)/Δ_r.
    """
    rows = []
    for p in params:
        record: Dict[str, Any] = p.to_record()
        try:
            H = horizon_roots(p, tolerances)
        except (DegenerateHorizons, NoPhotonSphere) as e:
            logging.getLogger().warning(f"Skipping {p}: {e}")
            record["error"] = str(e)
            rows.append(record)
            continue

        scale = float(np.max(np.abs(H.roots)))
        record.update(H.to_record())
        record["root_residual"] = float(np.max(np.abs(p.delta_r(H.roots))) / max(1.0, scale**2))
        record["root_sum"] = float(abs(np.sum(H.roots)) / scale)
        record["inverse_kappa_sum"] = float(abs(np.sum(1.0 / H.kappas)) / np.max(np.abs(1.0 / H.kappas)))
        rows.append(record)
    return DataFrame(rows)
