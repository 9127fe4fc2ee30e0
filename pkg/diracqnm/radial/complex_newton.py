from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from ..error.convergence_failure import ConvergenceFailure
from .log_spinor import ScaledComplex

ScaledFunction = Callable[[complex], ScaledComplex]

# Relative step of the derivative stencil
STENCIL_STEP = 1e-4
_STENCIL_DIRECTIONS = np.array([1.0, 1.0j, -1.0, -1.0j])


@dataclass(frozen=True)
class NewtonResult:
    z: complex
    value: ScaledComplex
    iterations: int
    trace: List[complex]


def log_derivative(func: ScaledFunction, z: complex, value: Optional[ScaledComplex] = None) -> complex:
    """
    G'(z)/G(z) from the four-point stencil Σ_k i^{−k}G(z + h·i^k)/(4h), exact for holomorphic G up to O(h⁴).

    The stencil values enter only through their ratios to G(z), so G may be far outside the floating range.
    """
    if value is None:
        value = func(z)
    h = STENCIL_STEP * max(1.0, abs(z))
    total = 0.0j
    for direction in _STENCIL_DIRECTIONS:
        total += func(z + h * direction).ratio(value) / direction
    return complex(total / (4.0 * h))


def newton(
    func: ScaledFunction,
    z0: complex,
    step_tol: float,
    max_iter: int = 40,
    max_step: Optional[float] = None,
) -> NewtonResult:
    """
    Newton's method for a zero of the holomorphic function `func`.

    Args:
        func: The function, returning log-scaled values.
        z0: The starting point.
        step_tol: Converged once |Δz| ≤ step_tol·max(1, |z|).
        max_iter: Iteration limit.
        max_step: Steps longer than this are shortened to it.

    Returns:
        The zero with the value there and the iterates.
    """
    z = complex(z0)
    trace = [z]
    for iteration in range(1, max_iter + 1):
        value = func(z)
        if value.mantissa == 0:
            return NewtonResult(z, value, iteration, trace)

        slope = log_derivative(func, z, value)
        if slope == 0:
            break
        step = 1.0 / slope
        if max_step is not None and abs(step) > max_step:
            step *= max_step / abs(step)
        z = z - step
        trace.append(z)
        logging.getLogger().debug(f"Newton iteration {iteration}: z={z}, |step|={abs(step):.3g}")

        if not np.isfinite(z):
            break
        if abs(step) <= step_tol * max(1.0, abs(z)):
            return NewtonResult(z, func(z), iteration, trace)

    raise ConvergenceFailure(f"Newton did not converge from z0={z0} in {max_iter} iterations", trace)
