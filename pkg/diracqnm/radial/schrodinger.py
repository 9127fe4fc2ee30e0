from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
import numpy.typing as npt

from ..spacetime.horizons import Side
from .radial_problem import SIGMA_1, SIGMA_3, RadialProblem

ComplexArray = npt.NDArray[np.complex128]

# U diagonalizes the Dirac operator squared: U D₀² U⁻¹ = diag(P₀⁻, P₀⁺)
U = (1j / np.sqrt(2.0)) * np.array([[1, 1j], [1, -1j]])
U_INV = (-1j / np.sqrt(2.0)) * np.array([[1, 1], [-1j, 1j]])

DEFAULT_GRID_POINTS = 2048
DEFAULT_TEST_SPINORS = 20


@dataclass(frozen=True)
class ReductionCheck:
    residual: float
    # W_h^± evaluated far out towards each horizon
    potential_limits: Dict[str, complex]

    def to_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {"residual": self.residual}
        for name, value in self.potential_limits.items():
            record[f"{name}_re"] = value.real
            record[f"{name}_im"] = value.imag
        return record


def schrodinger_potentials(
    q: ComplexArray, dq: ComplexArray, c: ComplexArray, lam: complex, h: float = 1.0
) -> Tuple[ComplexArray, ComplexArray]:
    """W_h^± = q² − (c − λ)² ± hq', the potentials of P_h^± = −h²∂² + W_h^±."""
    base = q**2 - (c - lam) ** 2
    return base - h * dq, base + h * dq


def reduction_residual(
    f: ComplexArray,
    df: ComplexArray,
    d2f: ComplexArray,
    q: ComplexArray,
    dq: ComplexArray,
    c: ComplexArray,
    dc: ComplexArray,
    lam: complex,
    h: float = 1.0,
) -> float:
    """
    Relative discrepancy between the two sides of

        D_{h,+}D_{h,-} = U⁻¹diag(P_h⁻, P_h⁺)U − ihc'σ₃,

    with D_{h,±} = −D_{h,0} ± (c − λ) and D_{h,0} = −ihσ₃∂ + qσ₁, applied to the spinor f of shape (2, n)
    whose exact first and second derivatives are df and d2f.
    """
    g = c - lam
    dg = dc

    # D₋f and its derivative
    u = 1j * h * (SIGMA_3 @ df) - q * (SIGMA_1 @ f) - g * f
    du = 1j * h * (SIGMA_3 @ d2f) - dq * (SIGMA_1 @ f) - q * (SIGMA_1 @ df) - dg * f - g * df
    lhs = 1j * h * (SIGMA_3 @ du) - q * (SIGMA_1 @ u) + g * u

    w_minus, w_plus = schrodinger_potentials(q, dq, c, lam, h)
    phi = U @ f
    d2phi = U @ d2f
    diagonal = -(h**2) * d2phi + np.array([w_minus, w_plus]) * phi
    rhs = U_INV @ diagonal - 1j * h * dc * (SIGMA_3 @ f)

    scale = max(float(np.max(np.abs(lhs))), np.finfo(float).tiny)
    return float(np.max(np.abs(lhs - rhs)) / scale)


def _gaussian_spinors(
    x: npt.NDArray[np.float64], n: int, seed: int
) -> List[Tuple[ComplexArray, ComplexArray, ComplexArray]]:
    rng = np.random.default_rng(seed)
    half_width = 0.5 * (x[-1] - x[0])
    spinors = []
    for _ in range(n):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        alpha = rng.uniform(0.2, 1.0)
        x0 = x[0] + half_width * (0.5 + rng.uniform())
        envelope = np.exp(-alpha * (x - x0) ** 2)
        d_log = -2.0 * alpha * (x - x0)
        f = v[:, None] * envelope
        spinors.append((f, d_log * f, (d_log**2 - 2.0 * alpha) * f))
    return spinors


def schrodinger_reduction_check(
    prob: RadialProblem,
    h: float = 1.0,
    n_points: int = DEFAULT_GRID_POINTS,
    n_spinors: int = DEFAULT_TEST_SPINORS,
    seed: int = 0,
) -> ReductionCheck:
    """
    Apply both sides of the factorization of D_{h,+}D_{h,-} to Gaussian test spinors on [−X0, X0].

    The coefficients are q = ω𝔞 and c(x, k); their x-derivatives are evaluated in closed form.

    Args:
        prob: A two-component problem of a massless field.
        h: The semiclassical parameter.
        n_points: Number of grid points.
        n_spinors: Number of random test spinors.
        seed: Seed of the random test spinors.

    Returns:
        The largest relative discrepancy and the limits of the potentials W_h^± at both ends.
    """
    if prob.full_system or prob.massive:
        raise ValueError("The Schrodinger reduction applies to the two-component massless system")

    bg = prob.background
    coeffs = bg.coefficients
    x = np.linspace(-bg.X0, bg.X0, n_points)
    r = np.asarray(bg.rw_map.r_of_x(x))
    q = prob.omega * coeffs.a_of_r(r)
    dq = prob.omega * coeffs.a_prime_of_r(r)
    c = coeffs.c_of_r(r, prob.k).astype(complex)
    dc = coeffs.c_prime_of_r(r, prob.k).astype(complex)

    residual = max(
        reduction_residual(f, df, d2f, q, dq, c, dc, prob.lam, h)
        for f, df, d2f in _gaussian_spinors(x, n_spinors, seed)
    )

    limits: Dict[str, complex] = {}
    for side in Side.all_values():
        kappa = bg.horizons.kappa(side)
        far = side.sign * (bg.X0 + 20.0 / abs(kappa))
        r_far = np.array([bg.rw_map.r_of_x(far)])
        w_minus, w_plus = schrodinger_potentials(
            prob.omega * coeffs.a_of_r(r_far),
            prob.omega * coeffs.a_prime_of_r(r_far),
            coeffs.c_of_r(r_far, prob.k),
            prob.lam,
            h,
        )
        name = side.name.lower()
        limits[f"W_minus_{name}"] = complex(w_minus[0])
        limits[f"W_plus_{name}"] = complex(w_plus[0])

    return ReductionCheck(residual, limits)
