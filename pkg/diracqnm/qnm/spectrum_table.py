from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

from pandas import DataFrame

from ..angular.angular_mode import AngularMode, exact_eigenvalue_a0
from ..angular.eigenvalue import DEFAULT_BASIS_SIZE
from ..error.continuation_ambiguity import ContinuationAmbiguity
from ..error.convergence_failure import ConvergenceFailure, ZeroCountMismatch
from ..error.series_errors import GammaPole, RadiusExceeded
from ..error.stiffness_error import StiffnessError
from ..parallel import ordered_map
from ..semiclassical.leading import leading_qnm_for_mode
from ..semiclassical.photon_sphere import PhotonSphereData, photon_sphere
from ..spacetime.black_hole_params import BlackHoleParams
from ..tolerances import Tolerances
from .qnm_record import QnmFailure, QnmRecord, SeedKind, SolveMethod
from .solver import solve_auto

# Relative λ-distance under which two table entries are the same mode
DEDUPLICATION_DISTANCE = 1e-8

SOLVER_ERRORS = (
    ConvergenceFailure,
    ContinuationAmbiguity,
    StiffnessError,
    GammaPole,
    RadiusExceeded,
    ZeroCountMismatch,
)

ModeKey = Tuple[AngularMode, int]

TABLE_COLUMNS = [
    "k",
    "l",
    "m",
    "lambda_re",
    "lambda_im",
    "residual",
    "seed_re",
    "seed_im",
    "method",
    "seed_kind",
    "mu_re",
    "mu_im",
    "scaled_wronskian",
    "iterations",
]


@dataclass(frozen=True)
class SpectrumTable:
    records: List[QnmRecord]
    failures: List[QnmFailure] = field(default_factory=list)
    # Entries dropped as duplicates of an earlier record, as (dropped, kept)
    duplicates: List[Tuple[QnmRecord, QnmRecord]] = field(default_factory=list)

    def to_frame(self, compare_leading: bool = False, params: Optional[BlackHoleParams] = None) -> DataFrame:
        """
        One row per mode.

        Args:
            compare_leading: Append the leading-order prediction and its distance to the computed λ.
            params: The parameter set, needed for `compare_leading`; it must have a = 0.
        """
        frame = DataFrame([r.to_record() for r in self.records], columns=TABLE_COLUMNS)
        if not compare_leading:
            return frame
        if params is None:
            raise ValueError("Comparing with the leading formula needs the parameter set")

        psd = photon_sphere(params)
        leading = [leading_qnm_for_mode(psd, r.mode, r.m) for r in self.records]
        frame["leading_re"] = [z.real for z in leading]
        frame["leading_im"] = [z.imag for z in leading]
        frame["leading_error"] = [abs(z - r.lam) for z, r in zip(leading, self.records)]
        return frame

    def failures_frame(self) -> DataFrame:
        return DataFrame([f.to_record() for f in self.failures], columns=["k", "l", "m", "error", "message"])


def mode_grid(ks: Sequence[float], ls: Sequence[int], ms: Sequence[int]) -> List[ModeKey]:
    """All (AngularMode(k, l), m) in iteration order k, then l, then m."""
    for name, values in (("k", ks), ("l", ls), ("m", ms)):
        if len(values) == 0:
            raise ValueError(f"The {name}-range of a spectrum table must not be empty")
    return [(AngularMode(float(k), int(l)), int(m)) for k, l, m in product(ks, ls, ms)]


def _solve_one(
    p: BlackHoleParams, key: ModeKey, N: int, tolerances: Tolerances
) -> Union[QnmRecord, QnmFailure]:
    mode, m = key
    try:
        return solve_auto(p, mode, m, N=N, tolerances=tolerances)
    except SOLVER_ERRORS as e:
        logging.getLogger().warning(f"No QNM for k={mode.k}, l={mode.l}, m={m}: {e}")
        return QnmFailure(mode, m, type(e).__name__, str(e))


def deduplicate(records: Sequence[QnmRecord]) -> Tuple[List[QnmRecord], List[Tuple[QnmRecord, QnmRecord]]]:
    """Drop records within DEDUPLICATION_DISTANCE·max(1, |λ|) of an earlier one, keeping the first."""
    kept: List[QnmRecord] = []
    dropped: List[Tuple[QnmRecord, QnmRecord]] = []
    for record in records:
        scale = max(1.0, abs(record.lam))
        match = next((r for r in kept if abs(r.lam - record.lam) < DEDUPLICATION_DISTANCE * scale), None)
        if match is None:
            kept.append(record)
        else:
            dropped.append((record, match))
    return kept, dropped


def spectrum_table(
    p: BlackHoleParams,
    ks: Sequence[float],
    ls: Sequence[int],
    ms: Sequence[int],
    N: int = DEFAULT_BASIS_SIZE,
    workers: int = 1,
    show_progress: bool = False,
    tolerances: Optional[Tolerances] = None,
) -> SpectrumTable:
    """
    Quasi-normal modes over a grid of (k, l, m).

    Every mode is solved with the default seeding policy. Failed modes are collected, duplicates dropped, and
    the remaining records sorted by (Re λ, −Im λ). The result does not depend on `workers`.

    Args:
        p: The parameter set.
        ks: Azimuthal numbers.
        ls: Angular branch indices.
        ms: Overtone indices.
        N: Basis size of the angular solver.
        workers: Number of modes solved concurrently.
        show_progress: Show a progress bar.
        tolerances: Numerical tolerances, the process defaults when omitted.

    Returns:
        The table with its failures.
    """
    tol = tolerances or Tolerances.from_env()
    grid = mode_grid(ks, ls, ms)
    results = ordered_map(
        lambda key: _solve_one(p, key, N, tol), grid, workers=workers, show_progress=show_progress, desc="QNMs"
    )

    records = [r for r in results if isinstance(r, QnmRecord)]
    failures = [r for r in results if isinstance(r, QnmFailure)]
    kept, dropped = deduplicate(records)
    for record, match in dropped:
        logging.getLogger().info(
            f"Mode (k={record.mode.k}, l={record.mode.l}, m={record.m}) converged to the same lambda as "
            f"(k={match.mode.k}, l={match.mode.l}, m={match.m})"
        )

    kept.sort(key=lambda r: (r.lam.real, -r.lam.imag))
    return SpectrumTable(kept, failures, dropped)


def leading_record(psd: PhotonSphereData, mode: AngularMode, m: int) -> QnmRecord:
    """The leading-formula prediction for (k, l, m) as a record; no Wronskian is evaluated."""
    lam = leading_qnm_for_mode(psd, mode, m)
    return QnmRecord(
        lam=lam,
        mode=mode,
        m=m,
        mu=complex(exact_eigenvalue_a0(mode)),
        residual=float("nan"),
        scaled_wronskian=float("nan"),
        method=SolveMethod.SEMICLASSICAL,
        seed=lam,
        seed_kind=SeedKind.LEADING,
        iterations=0,
    )


def leading_table(p: BlackHoleParams, ks: Sequence[float], ls: Sequence[int], ms: Sequence[int]) -> SpectrumTable:
    """Semiclassical predictions over a grid of (k, l, m), sorted like `spectrum_table`. Needs a = 0."""
    psd = photon_sphere(p)
    records = [leading_record(psd, mode, m) for mode, m in mode_grid(ks, ls, ms)]
    kept, dropped = deduplicate(records)
    kept.sort(key=lambda r: (r.lam.real, -r.lam.imag))
    return SpectrumTable(kept, [], dropped)
