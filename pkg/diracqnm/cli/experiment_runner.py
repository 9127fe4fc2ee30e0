from __future__ import annotations

from argparse import Namespace
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from pandas import DataFrame

from ..angular.angular_mode import mode_from_total_index
from ..error.suggester import generate_suggestive_error_message
from ..qnm.checks import (
    angular_a0_table,
    bounds_table,
    horizons_table,
    random_params,
    real_axis_scan,
    reduction_table,
    sample_benchmark,
    series_oracle_table,
)
from ..qnm.experiments import convergence_study, mass_independence_experiment, zeeman_experiment
from .run_config import RunConfig

DEFAULT_KS = [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5]
DEFAULT_MASS_L_HALVES = [6.0, 8.0, 10.0, 14.0, 20.0]

Experiment = Callable[[RunConfig, Namespace], DataFrame]


def _or_default(values: Optional[Sequence[float]], default: Sequence[float]) -> List[float]:
    return list(values) if values else list(default)


def _convergence(config: RunConfig, args: Namespace) -> DataFrame:
    k = _or_default(args.k, [0.5])[0]
    report = convergence_study(
        config.params,
        k=k,
        m=args.overtone,
        l_halves=_or_default(args.l_halves, [5.0, 10.0, 20.0]),
        N=config.N,
        workers=config.workers,
        show_progress=config.show_progress,
        tolerances=config.tolerances,
    )
    frame = report.frame
    if report.fit is not None:
        frame["b02"] = report.fit.b02
        frame["b12"] = report.fit.b12
    return frame


def _mass(config: RunConfig, args: Namespace) -> DataFrame:
    k = _or_default(args.k, [0.5])[0]
    M = config.params.M
    modes = [
        (mode_from_total_index(k, l_half), args.overtone)
        for l_half in _or_default(args.l_halves, DEFAULT_MASS_L_HALVES)
    ]
    report = mass_independence_experiment(
        config.params,
        _or_default(args.masses, [0.05 / M, 0.1 / M]),
        modes,
        N=config.N,
        workers=config.workers,
        show_progress=config.show_progress,
        tolerances=config.tolerances,
    )
    return report.frame.merge(report.fits, on="mass", how="left")


def _zeeman(config: RunConfig, args: Namespace) -> DataFrame:
    l_half = _or_default(args.l_halves, [10.0])[0]
    return zeeman_experiment(
        config.params,
        l_half,
        args.overtone,
        _or_default(args.a_values, [0.01, 0.02, 0.04]),
        k=args.k[0] if args.k else None,
        N=config.N,
        workers=config.workers,
        show_progress=config.show_progress,
        tolerances=config.tolerances,
    )


def _real_axis(config: RunConfig, args: Namespace) -> DataFrame:
    return real_axis_scan(
        config.params,
        _or_default(args.k, [0.5, 1.5]),
        list(np.linspace(0.2, 3.0, 8)),
        list(np.linspace(0.5, 6.0, 6)),
        workers=config.workers,
        show_progress=config.show_progress,
        tolerances=config.tolerances,
    )


def _series_oracle(config: RunConfig, args: Namespace) -> DataFrame:
    return series_oracle_table(
        config.params,
        sample_benchmark(args.random_seed, args.samples),
        workers=config.workers,
        show_progress=config.show_progress,
        tolerances=config.tolerances,
    )


def _reduction(config: RunConfig, args: Namespace) -> DataFrame:
    return reduction_table(config.params, sample_benchmark(args.random_seed, args.samples), config.tolerances)


def _angular_a0(config: RunConfig, args: Namespace) -> DataFrame:
    return angular_a0_table(_or_default(args.k, DEFAULT_KS), [1, 2, 3, 4, -1, -2], N=config.N)


def _bounds(config: RunConfig, args: Namespace) -> DataFrame:
    return bounds_table(
        config.params,
        _or_default(args.k, DEFAULT_KS),
        [1, 2, 3],
        [-2.0, 1.0, 2.5],
        N=config.N,
        tolerances=config.tolerances,
    )


def _horizons_random(config: RunConfig, args: Namespace) -> DataFrame:
    return horizons_table(random_params(args.random_seed, args.samples), config.tolerances)


EXPERIMENTS: Dict[str, Experiment] = {
    "convergence": _convergence,
    "mass": _mass,
    "zeeman": _zeeman,
    "real-axis": _real_axis,
    "series-oracle": _series_oracle,
    "reduction": _reduction,
    "angular-a0": _angular_a0,
    "bounds": _bounds,
    "horizons-random": _horizons_random,
}


def lookup_experiment(name: str) -> Experiment:
    """
    Raises:
        ValueError: For an unknown name, suggesting the closest one.
    """
    if name not in EXPERIMENTS:
        raise ValueError(generate_suggestive_error_message("experiment", name, list(EXPERIMENTS)))
    return EXPERIMENTS[name]
