from __future__ import annotations

import logging
from typing import Dict, Optional, Union

import numpy as np

from ..angular.angular_mode import AngularMode, exact_eigenvalue_a0
from ..angular.eigenvalue import DEFAULT_BASIS_SIZE, eigenvalue, eigenvalue_near
from ..error.convergence_failure import ConvergenceFailure
from ..radial.complex_newton import ScaledFunction, log_derivative, newton
from ..radial.log_spinor import ScaledComplex
from ..radial.radial_problem import RadialProblem
from ..radial.resonances import is_exceptional
from ..radial.wronskian import free_wronskian_scale, wronskian
from ..semiclassical.leading import leading_qnm_for_mode
from ..semiclassical.photon_sphere import photon_sphere
from ..spacetime.background import Background
from ..spacetime.black_hole_params import BlackHoleParams
from ..tolerances import Tolerances
from .qnm_record import QnmRecord, SeedKind, SolveMethod

MAX_ITERATIONS = 50
CONTINUATION_STEPS = 4
# Half-width ν₀ of the strip |Im λ| < ν₀ in which seeds are accepted
STRIP_HALF_WIDTH = 2.0

Seed = Union[complex, float, str]


class _CombinedCondition:
    """
    G(λ) = W(λ, μ_kl(λ), k) with μ tracked from the previous evaluation.

    Nearby points reuse the last eigenvalue as the guess of `eigenvalue_near`, so the branch selected by
    continuation at the seed is followed along the iteration.
    """

    def __init__(
        self, background: Background, mode: AngularMode, seed: complex, N: int, tolerances: Tolerances
    ) -> None:
        self._background = background
        self._mode = mode
        self._N = N
        p = background.params
        self._fixed_mu: Optional[complex] = None
        if p.a == 0:
            # With a = 0 the angular operator does not see λ
            self._fixed_mu = complex(exact_eigenvalue_a0(mode))
            self._mu = self._fixed_mu
        else:
            self._mu = eigenvalue(p, mode, seed, N, tolerances).mu

    def mu(self, lam: complex) -> complex:
        if self._fixed_mu is not None:
            return self._fixed_mu
        self._mu = eigenvalue_near(self._background.params, self._mode, lam, self._mu, self._N)
        return self._mu

    def problem(self, lam: complex) -> RadialProblem:
        return RadialProblem(self._background, complex(lam), self.mu(lam), self._mode.k)

    def __call__(self, lam: complex) -> ScaledComplex:
        return wronskian(self.problem(lam)).value


def _resolve_seed(background: Background, mode: AngularMode, m: int, seed: Seed) -> complex:
    if isinstance(seed, str):
        if seed != "auto":
            raise ValueError(f"The seed must be a complex number or 'auto', got '{seed}'")
        if background.params.a != 0:
            raise ValueError("The 'auto' seed of a single solve needs a = 0, use continue_in_rotation for a != 0")
        return leading_qnm_for_mode(photon_sphere(background.params), mode, m)

    value = complex(seed)
    if not abs(value.imag) < STRIP_HALF_WIDTH:
        raise ValueError(f"The seed {value} lies outside the strip |Im lambda| < {STRIP_HALF_WIDTH}")
    return value


def relative_residual(func: ScaledFunction, value: ScaledComplex, lam: complex) -> float:
    """|G/G'| at λ relative to max(1, |λ|), the distance to the zero implied by the local slope."""
    if value.mantissa == 0:
        return 0.0
    slope = log_derivative(func, lam, value)
    if slope == 0:
        return float("inf")
    return float(abs(1.0 / slope) / max(1.0, abs(lam)))


def scaled_wronskian(value: ScaledComplex, problem: RadialProblem) -> float:
    """|W| relative to the free Wronskian at the same λ; NaN where the free Wronskian vanishes."""
    free = free_wronskian_scale(problem)
    if free.mantissa == 0:
        return float("nan")
    return float(abs(value.ratio(free)))


def qnm_solve(
    p: BlackHoleParams,
    mode: AngularMode,
    m: int,
    seed: Seed = "auto",
    background: Optional[Background] = None,
    N: int = DEFAULT_BASIS_SIZE,
    tolerances: Optional[Tolerances] = None,
) -> QnmRecord:
    """
    A quasi-normal mode by Newton's method on G(λ) = W(λ, μ_kl(λ), k), with the angular eigenvalue
    recomputed at every iterate.

    Args:
        p: The parameter set.
        mode: The angular mode (k, l).
        m: The overtone index, used by the 'auto' seed and carried into the record.
        seed: The starting λ, or 'auto' for the leading semiclassical formula (a = 0 only).
        background: A prebuilt background for `p`.
        N: Basis size of the angular solver.
        tolerances: Numerical tolerances, the process defaults when omitted.

    Returns:
        The converged mode.

    Raises:
        ConvergenceFailure: When the iteration ends outside the lower half-plane, or when the scaled Wronskian
            |W|/|W_free| at the last iterate is not below `tolerances.residual`. On the Gamma-pole set, where
            W_free vanishes, the step residual is compared instead.
        ContinuationAmbiguity: When the angular continuation at the seed is ambiguous.
    """
    tol = tolerances or Tolerances.from_env()
    bg = background or Background.build(p, tol)
    if bg.params != p:
        raise ValueError("The background was built for a different parameter set")
    if m < 0:
        raise ValueError(f"The overtone index must be nonnegative, got {m}")

    seed_kind = SeedKind.LEADING if isinstance(seed, str) else SeedKind.USER
    lam0 = _resolve_seed(bg, mode, m, seed)
    G = _CombinedCondition(bg, mode, lam0, N, tol)

    result = newton(G, lam0, tol.newton_step, max_iter=MAX_ITERATIONS)
    lam = result.z
    if not lam.imag < 0:
        raise ConvergenceFailure(f"Iteration ended at lambda={lam}, outside the lower half-plane", result.trace)

    residual = relative_residual(G, result.value, lam)
    problem = G.problem(lam)
    scaled = scaled_wronskian(result.value, problem)
    if np.isnan(scaled):
        if not is_exceptional(bg, lam, mode.k):
            raise ConvergenceFailure(f"Scaled Wronskian at lambda={lam} is not a number", result.trace)
        # The free Wronskian vanishes on the Gamma-pole set; only the step residual is left there
        logging.getLogger().info(f"Free Wronskian vanishes at lambda={lam}, accepting on the step residual")
        if residual > tol.residual:
            raise ConvergenceFailure(
                f"Residual {residual:.3g} at lambda={lam} exceeds the tolerance {tol.residual:.3g}", result.trace
            )
    elif scaled >= tol.residual:
        raise ConvergenceFailure(
            f"Scaled Wronskian {scaled:.3g} at lambda={lam} is not below the tolerance {tol.residual:.3g}",
            result.trace,
        )

    mu = G.mu(lam)
    logging.getLogger().info(
        f"QNM k={mode.k}, l={mode.l}, m={m}: lambda={lam} after {result.iterations} iterations "
        f"(scaled Wronskian {scaled:.3g}, step residual {residual:.3g})"
    )

    return QnmRecord(
        lam=lam,
        mode=mode,
        m=m,
        mu=mu,
        residual=residual,
        scaled_wronskian=scaled,
        method=SolveMethod.WRONSKIAN,
        seed=lam0,
        seed_kind=seed_kind,
        iterations=result.iterations,
    )


def continue_in_rotation(
    p: BlackHoleParams,
    mode: AngularMode,
    m: int,
    steps: int = CONTINUATION_STEPS,
    N: int = DEFAULT_BASIS_SIZE,
    tolerances: Optional[Tolerances] = None,
) -> QnmRecord:
    """
    The mode at rotation a, followed from the leading-formula solve at a = 0 through `steps` equal steps in a
    with a Newton solve at each.

    Raises:
        ConvergenceFailure: When a step fails to converge; the message names the rotation it failed at.
    """
    if steps < 1:
        raise ValueError(f"The number of continuation steps must be at least 1, got {steps}")

    tol = tolerances or Tolerances.from_env()
    record = qnm_solve(p.with_changes(a=0.0), mode, m, "auto", N=N, tolerances=tol)
    if p.a == 0:
        return record

    first_seed = record.seed
    for step in range(1, steps + 1):
        a = p.a * step / steps
        p_step = p if step == steps else p.with_changes(a=a)
        try:
            record = qnm_solve(p_step, mode, m, record.lam, N=N, tolerances=tol)
        except ConvergenceFailure as e:
            raise ConvergenceFailure(f"Continuation step {step}/{steps} at a={a} failed: {e}", e.trace)
        logging.getLogger().debug(f"Continuation step {step}/{steps}: a={a}, lambda={record.lam}")

    return QnmRecord(
        lam=record.lam,
        mode=record.mode,
        m=m,
        mu=record.mu,
        residual=record.residual,
        scaled_wronskian=record.scaled_wronskian,
        method=SolveMethod.WRONSKIAN,
        seed=first_seed,
        seed_kind=SeedKind.CONTINUATION,
        iterations=record.iterations,
    )


def solve_auto(
    p: BlackHoleParams, mode: AngularMode, m: int, N: int = DEFAULT_BASIS_SIZE, tolerances: Optional[Tolerances] = None
) -> QnmRecord:
    """The seeding policy: the leading formula at a = 0, continuation in rotation otherwise."""
    if p.a == 0:
        return qnm_solve(p, mode, m, "auto", N=N, tolerances=tolerances)
    return continue_in_rotation(p, mode, m, N=N, tolerances=tolerances)


def combined_condition_drift(p: BlackHoleParams, record: QnmRecord, N: int = DEFAULT_BASIS_SIZE) -> Dict[str, float]:
    """
    Recompute μ_kl at the converged λ by full continuation and report the relative residual of W there.
    """
    tol = Tolerances.from_env()
    bg = Background.build(p, tol)
    mu = eigenvalue(p, record.mode, record.lam, N, tol).mu if p.a != 0 else complex(exact_eigenvalue_a0(record.mode))
    G = _CombinedCondition(bg, record.mode, record.lam, N, tol)
    at_zero = G(record.lam)
    value = wronskian(RadialProblem(bg, record.lam, mu, record.mode.k)).value
    if at_zero.mantissa == 0 or value.mantissa == 0:
        return {"mu_change": float(np.abs(mu - record.mu)), "residual": 0.0}
    # |W(μ_new)|/|G'(λ)|, with G' = G·(G'/G)
    slope = log_derivative(G, record.lam, at_zero)
    residual = float(abs(value.ratio(at_zero)) / abs(slope) / max(1.0, abs(record.lam)))
    return {"mu_change": float(np.abs(mu - record.mu)), "residual": residual}
