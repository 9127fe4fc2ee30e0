from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ..error.continuation_ambiguity import ContinuationAmbiguity
from ..spacetime.black_hole_params import BlackHoleParams
from ..tolerances import Tolerances
from .angular_mode import AngularMode, exact_eigenvalue_a0
from .discretization import AngularDiscretization, discretize_operator

CONTINUATION_STEPS = 8
MAX_BASIS_SIZE = 512
DEFAULT_BASIS_SIZE = 64

# Constants of the a-uniform eigenvalue bounds
BOUND_C1 = 2.0 * (np.exp(1.0 / 26.0) - 1.0) * (1.0 + 1.0 / 26.0)
BOUND_C2 = BOUND_C1 / 4.0


@dataclass(frozen=True)
class AngularEigenvalue:
    mu: complex
    mode: AngularMode
    lam: complex
    # Length of the straight (ζ, ξ, ν) path from the a = 0 operator
    continuation_distance: float
    est_error: float
    N: int

    def to_record(self) -> Dict[str, Any]:
        return {
            "k": self.mode.k,
            "l": self.mode.l,
            "lambda_re": self.lam.real,
            "lambda_im": self.lam.imag,
            "mu_re": self.mu.real,
            "mu_im": self.mu.imag,
            "est_error": self.est_error,
        }


def _spectrum(disc: AngularDiscretization) -> npt.NDArray[np.complex128]:
    matrix = disc.reduced_matrix
    if disc.is_real:
        return scipy.linalg.eigvalsh(matrix.real).astype(complex)
    return scipy.linalg.eigvals(matrix)


def _nearest(
    spectrum: npt.NDArray[np.complex128], target: complex, collision_tol: float, step: int
) -> complex:
    distances = np.abs(spectrum - target)
    order = np.argsort(distances)
    first = spectrum[order[0]]
    if len(order) > 1:
        second = spectrum[order[1]]
        if abs(first - second) < collision_tol * max(1.0, abs(target)):
            raise ContinuationAmbiguity(complex(first), complex(second), step)
    return complex(first)


def _continue_from_a0(
    mode: AngularMode, zeta: float, xi: complex, nu: float, N: int, collision_tol: float
) -> complex:
    # Ã carries the sign-symmetric spectrum only when ν = 0; l < 0 is recovered by μ_{k,−l} = −μ_{kl}
    mu = complex(exact_eigenvalue_a0(AngularMode(mode.k, abs(mode.l))))
    for step in range(1, CONTINUATION_STEPS + 1):
        t = step / CONTINUATION_STEPS
        disc = discretize_operator(mode.k, t * zeta, t * xi, t * nu, N, massive=nu != 0)
        mu = _nearest(_spectrum(disc), mu, collision_tol, step)

    return mu if mode.l > 0 else -mu


def eigenvalue_near(
    p: BlackHoleParams, mode: AngularMode, lam: complex, guess: complex, N: int = DEFAULT_BASIS_SIZE
) -> complex:
    """
    The eigenvalue of the discrete A_k(λ) closest to `guess`, without continuation.

    Used by iterative solvers that already hold μ at a nearby λ.
    """
    disc = discretize_operator(mode.k, p.zeta, p.a * lam, p.nu, N, massive=p.m != 0)
    target = guess if mode.l > 0 else -guess
    spectrum = _spectrum(disc)
    mu = complex(spectrum[np.argmin(np.abs(spectrum - target))])
    return mu if mode.l > 0 else -mu


def eigenvalue(
    p: BlackHoleParams,
    mode: AngularMode,
    lam: complex,
    N: int = DEFAULT_BASIS_SIZE,
    tolerances: Optional[Tolerances] = None,
) -> AngularEigenvalue:
    """
    μ_kl(λ), selected by continuation from the exact a = 0 value along the straight path in (ζ, ξ, ν).

    The truncation error is estimated by comparing N with 2N basis functions; N is doubled while this
    estimate exceeds the angular truncation tolerance.

    Args:
        p: The parameter set.
        mode: The mode (k, l).
        lam: The spectral parameter, real or complex.
        N: Initial number of basis functions per spinor component.
        tolerances: Numerical tolerances, the process defaults when omitted.

    Returns:
        The eigenvalue with its truncation estimate and the basis size it was computed at.
    """
    tol = tolerances or Tolerances.from_env()
    zeta, xi, nu = p.zeta, p.a * complex(lam), p.nu

    mu = _continue_from_a0(mode, zeta, xi, nu, N, tol.collision)
    while True:
        refined = _continue_from_a0(mode, zeta, xi, nu, 2 * N, tol.collision)
        est_error = abs(refined - mu)
        mu = refined
        N = 2 * N
        if est_error <= tol.angular_truncation:
            break
        if N >= MAX_BASIS_SIZE:
            warnings.warn(
                f"Angular truncation estimate {est_error:.3g} for mode {mode} still exceeds "
                f"{tol.angular_truncation:.3g} at the largest basis N={N}",
                RuntimeWarning,
            )
            break
        warnings.warn(
            f"Angular truncation estimate {est_error:.3g} for mode {mode} exceeds "
            f"{tol.angular_truncation:.3g}, doubling the basis to N={2 * N}",
            RuntimeWarning,
        )

    logging.getLogger().debug(f"mu_{mode.k},{mode.l}({lam}) = {mu} at N={N} (estimate {est_error:.3g})")

    return AngularEigenvalue(
        mu=mu,
        mode=mode,
        lam=complex(lam),
        continuation_distance=float(np.sqrt(zeta**2 + abs(xi) ** 2 + nu**2)),
        est_error=float(est_error),
        N=N,
    )


def eigenvalue_bounds(p: BlackHoleParams, mode: AngularMode, lam: complex) -> Tuple[float, float]:
    """
    Lower and upper bounds for |μ_kl(λ)| at real λ, uniform in the admissible rotation range.
    """
    total = mode.total_index
    shift = BOUND_C1 * abs(mode.k) + BOUND_C2 + abs(p.a * lam) + abs(p.a) * p.m
    lower = (2.0 - np.exp(1.0 / 26.0)) * total - shift
    upper = np.exp(1.0 / 26.0) * total + shift
    return float(lower), float(upper)
