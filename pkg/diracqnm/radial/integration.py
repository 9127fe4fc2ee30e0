from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from ..error.stiffness_error import StiffnessError
from .log_spinor import LogSpinor
from .radial_problem import RadialProblem

# Length in x after which the solution is renormalized
SEGMENT_LENGTH = 2.0


def integrate_interior(
    prob: RadialProblem,
    init: LogSpinor,
    x_start: float,
    x_end: float,
    r_start: Optional[float] = None,
) -> LogSpinor:
    """
    Integrate the radial system from x_start to x_end with an explicit eighth-order Runge-Kutta scheme.

    The radius is integrated along with the spinor, and the spinor is renormalized after every segment with
    the scale kept in the logarithm.

    Args:
        prob: The radial problem.
        init: The solution at x_start.
        x_start: Where the data is given.
        x_end: Where the solution is wanted, in either direction.
        r_start: The radius at x_start, computed from the coordinate map when omitted.

    Returns:
        The solution at x_end.
    """
    if x_start == x_end or init.is_zero:
        return init

    tol = prob.background.tolerances
    r = prob.background.rw_map.r_of_x(x_start) if r_start is None else r_start
    log_scale = init.log_scale
    f = init.vector

    n_segments = max(1, int(np.ceil(abs(x_end - x_start) / SEGMENT_LENGTH)))
    nodes = np.linspace(x_start, x_end, n_segments + 1)
    for a, b in zip(nodes[:-1], nodes[1:]):
        y0 = np.concatenate([f, [complex(r)]])
        sol = solve_ivp(prob.rhs, (a, b), y0, method="DOP853", rtol=tol.ode_rtol, atol=tol.ode_atol)
        if not sol.success:
            raise StiffnessError(float(sol.t[-1]), sol.message)

        y = sol.y[:, -1]
        r = y[-1].real
        norm = float(np.linalg.norm(y[:-1]))
        if norm == 0.0:
            return LogSpinor(log_scale, np.zeros_like(f))
        f = y[:-1] / norm
        log_scale = log_scale + np.log(norm)

    logging.getLogger().debug(f"Integrated from x={x_start} to x={x_end} in {n_segments} segments")

    return LogSpinor(complex(log_scale), f)
