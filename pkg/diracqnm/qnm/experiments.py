from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pandas import DataFrame

from ..angular.angular_mode import AngularMode, mode_from_total_index
from ..angular.eigenvalue import DEFAULT_BASIS_SIZE
from ..parallel import ordered_map
from ..semiclassical.leading import NextOrderFit, fit_next_order, leading_qnm_for_mode, next_order_correction
from ..semiclassical.photon_sphere import photon_sphere
from ..semiclassical.quantization import zeeman_slopes
from ..spacetime.black_hole_params import BlackHoleParams
from ..tolerances import Tolerances
from .qnm_record import QnmRecord
from .solver import solve_auto

# Largest 𝔪M for which the field mass is treated as a perturbation
MAX_MASS_PARAMETER = 0.1

ModeKey = Tuple[AngularMode, int]


@dataclass(frozen=True)
class MassIndependenceReport:
    """
    |λ(𝔪) − λ(0)| per mode and mass, with the power law C(l + 1/2)^p fitted for every nonzero mass.

    `exponent` and `constant` belong to the mass with the slowest decay.
    """

    frame: DataFrame
    fits: DataFrame
    exponent: float
    constant: float


def _fit_power_law(l_halves: Sequence[float], values: Sequence[float]) -> Tuple[float, float]:
    x = np.log(np.asarray(l_halves, dtype=float))
    y = np.asarray(values, dtype=float)
    positive = y > 0
    if np.count_nonzero(positive) < 2:
        return float("nan"), float("nan")
    slope, intercept = np.polyfit(x[positive], np.log(y[positive]), 1)
    return float(slope), float(np.exp(intercept))


def mass_independence_experiment(
    p: BlackHoleParams,
    masses: Sequence[float],
    modes: Sequence[ModeKey],
    N: int = DEFAULT_BASIS_SIZE,
    workers: int = 1,
    show_progress: bool = False,
    tolerances: Optional[Tolerances] = None,
) -> MassIndependenceReport:
    """
    Measure how fast the field mass drops out of the spectrum as l grows.

    Args:
        p: The parameter set; its field mass is replaced by each entry of `masses`.
        masses: Field masses 𝔪 with 𝔪M ≤ 0.1.
        modes: The (mode, overtone) pairs to solve.
        N: Basis size of the angular solver.
        workers: Number of solves run concurrently.
        show_progress: Show a progress bar.
        tolerances: Numerical tolerances, the process defaults when omitted.

    Returns:
        The differences with the rotation-induced bound a𝔪 on the angular shift, and the fitted decay.
    """
    for mass in masses:
        if mass < 0 or mass * p.M > MAX_MASS_PARAMETER:
            raise ValueError(f"Field masses must satisfy 0 <= m*M <= {MAX_MASS_PARAMETER}, got m={mass}")
    if not modes:
        raise ValueError("The mass experiment needs at least one mode")

    tol = tolerances or Tolerances.from_env()
    all_masses = [0.0] + [float(mass) for mass in masses if mass != 0]
    jobs = [(mass, key) for mass in all_masses for key in modes]
    records = ordered_map(
        lambda job: solve_auto(p.with_changes(m=job[0]), job[1][0], job[1][1], N=N, tolerances=tol),
        jobs,
        workers=workers,
        show_progress=show_progress,
        desc="mass experiment",
    )
    massless = {(key[0], key[1]): record for (mass, key), record in zip(jobs, records) if mass == 0}

    rows = []
    for (mass, (mode, m)), record in zip(jobs, records):
        reference = massless[(mode, m)]
        rows.append(
            {
                "k": mode.k,
                "l": mode.l,
                "m": m,
                "l_half": mode.total_index,
                "mass": mass,
                "lambda_re": record.lam.real,
                "lambda_im": record.lam.imag,
                "difference": abs(record.lam - reference.lam),
                "mu_shift": abs(record.mu - reference.mu),
                "mu_shift_bound": abs(p.a) * mass,
            }
        )
    frame = DataFrame(rows)

    fits = []
    for mass in all_masses[1:]:
        subset = frame[frame["mass"] == mass].groupby("l_half")["difference"].max()
        exponent, constant = _fit_power_law(list(subset.index), list(subset.values))
        fits.append({"mass": mass, "exponent": exponent, "constant": constant})
        logging.getLogger().info(f"Mass m={mass}: |lambda(m) - lambda(0)| ~ {constant:.3g}*(l+1/2)^{exponent:.3f}")
    fits_frame = DataFrame(fits, columns=["mass", "exponent", "constant"])

    if fits:
        worst = max(fits, key=lambda f: f["exponent"] if np.isfinite(f["exponent"]) else -np.inf)
        exponent, constant = float(worst["exponent"]), float(worst["constant"])
    else:
        exponent, constant = float("nan"), float("nan")

    return MassIndependenceReport(frame, fits_frame, exponent, constant)


@dataclass(frozen=True)
class ConvergenceReport:
    frame: DataFrame
    fit: Optional[NextOrderFit]


def convergence_study(
    p: BlackHoleParams,
    k: float = 0.5,
    m: int = 0,
    l_halves: Sequence[float] = (5.0, 10.0, 20.0),
    fit_points: int = 2,
    N: int = DEFAULT_BASIS_SIZE,
    workers: int = 1,
    show_progress: bool = False,
    tolerances: Optional[Tolerances] = None,
) -> ConvergenceReport:
    """
    Distance e_l of computed modes from the leading formula along a family of growing l + 1/2.

    The ratio e_{2l}/e_l is reported wherever the family doubles. The next-order constants b02 and b12 are
    fitted from the `fit_points` smallest members and the corrected distance is tabulated alongside.

    Args:
        p: A parameter set with a = 0.
        k: The azimuthal number of the family.
        m: The overtone index.
        l_halves: Values of l + 1/2, each of which must be reachable from k.
        fit_points: Number of modes the next-order fit uses; 0 disables it.
        N: Basis size of the angular solver.
        workers: Number of solves run concurrently.
        show_progress: Show a progress bar.
        tolerances: Numerical tolerances, the process defaults when omitted.
    """
    if p.a != 0:
        raise ValueError(f"The convergence study compares with the a = 0 formula, got a={p.a}")
    if fit_points > len(l_halves):
        raise ValueError(f"Cannot fit from {fit_points} points with {len(l_halves)} modes")

    tol = tolerances or Tolerances.from_env()
    psd = photon_sphere(p)
    l_halves = sorted(float(l) for l in l_halves)
    modes = [mode_from_total_index(k, l_half) for l_half in l_halves]
    records: List[QnmRecord] = ordered_map(
        lambda mode: solve_auto(p, mode, m, N=N, tolerances=tol),
        modes,
        workers=workers,
        show_progress=show_progress,
        desc="convergence study",
    )

    fit = None
    if fit_points > 0:
        fit = fit_next_order(psd, [(l_half - 0.5, m, r.lam) for l_half, r in zip(l_halves, records[:fit_points])])

    rows = []
    errors = {}
    for l_half, mode, record in zip(l_halves, modes, records):
        leading = leading_qnm_for_mode(psd, mode, m)
        error = abs(record.lam - leading)
        errors[l_half] = error
        row = {
            "l_half": l_half,
            "lambda_re": record.lam.real,
            "lambda_im": record.lam.imag,
            "leading_re": leading.real,
            "leading_im": leading.imag,
            "error": error,
            "ratio": errors[l_half] / errors[l_half / 2] if l_half / 2 in errors else float("nan"),
        }
        if fit is not None:
            corrected = next_order_correction(psd, l_half - 0.5, m, fit.b02, fit.b12)
            row["corrected_error"] = abs(record.lam - corrected)
        rows.append(row)

    return ConvergenceReport(DataFrame(rows), fit)


def zeeman_experiment(
    p: BlackHoleParams,
    l_half: float,
    m: int,
    a_values: Sequence[float],
    k: Optional[float] = None,
    N: int = DEFAULT_BASIS_SIZE,
    workers: int = 1,
    show_progress: bool = False,
    tolerances: Optional[Tolerances] = None,
) -> DataFrame:
    """
    The splitting (λ(k) − λ(−k))/(2k) of a ±k pair with common l + 1/2, against the first-order slope
    a(1/r_0² − z_0²).

    Args:
        p: The parameter set; its rotation is replaced by each entry of `a_values`.
        l_half: The common value of l + 1/2.
        m: The overtone index.
        a_values: Rotation parameters.
        k: A positive azimuthal number, the edge k = l + 1/2 − 1/2 when omitted.
        N: Basis size of the angular solver.
        workers: Number of solves run concurrently.
        show_progress: Show a progress bar.
        tolerances: Numerical tolerances, the process defaults when omitted.

    Returns:
        One row per rotation. `discrepancy` is |Re splitting − closed form|, signed values compared; it is
        O(a²) for edge modes.
    """
    k = l_half - 0.5 if k is None else k
    if k <= 0:
        raise ValueError(f"The azimuthal number of a Zeeman pair must be positive, got {k}")

    tol = tolerances or Tolerances.from_env()
    pair = (mode_from_total_index(k, l_half), mode_from_total_index(-k, l_half))
    jobs = [(float(a), mode) for a in a_values for mode in pair]
    records = ordered_map(
        lambda job: solve_auto(p.with_changes(a=job[0]), job[1], m, N=N, tolerances=tol),
        jobs,
        workers=workers,
        show_progress=show_progress,
        desc="zeeman experiment",
    )

    rows = []
    for i, a in enumerate(float(a) for a in a_values):
        plus, minus = records[2 * i], records[2 * i + 1]
        splitting = (plus.lam - minus.lam) / (2.0 * k)
        closed_form, _ = zeeman_slopes(photon_sphere(p.with_changes(a=a)))
        discrepancy = abs(splitting.real - closed_form)
        relative_error = discrepancy / abs(closed_form) if closed_form != 0 else float("nan")
        rows.append(
            {
                "a": a,
                "k": k,
                "l_half": l_half,
                "lambda_plus_re": plus.lam.real,
                "lambda_plus_im": plus.lam.imag,
                "lambda_minus_re": minus.lam.real,
                "lambda_minus_im": minus.lam.imag,
                "splitting_re": splitting.real,
                "splitting_im": splitting.imag,
                "closed_form": closed_form,
                "discrepancy": discrepancy,
                "relative_error": relative_error,
            }
        )

    return DataFrame(rows)
