from .checks import (
    BenchmarkPoint,
    angular_a0_table,
    bounds_table,
    horizons_table,
    random_params,
    real_axis_scan,
    reduction_table,
    sample_benchmark,
    series_oracle,
    series_oracle_table,
)
from .experiments import (
    ConvergenceReport,
    MassIndependenceReport,
    convergence_study,
    mass_independence_experiment,
    zeeman_experiment,
)
from .qnm_record import QnmFailure, QnmRecord, SeedKind, SolveMethod
from .solver import combined_condition_drift, continue_in_rotation, qnm_solve, solve_auto
from .spectrum_table import SpectrumTable, deduplicate, leading_record, leading_table, mode_grid, spectrum_table

__all__ = [
    "BenchmarkPoint",
    "ConvergenceReport",
    "MassIndependenceReport",
    "QnmFailure",
    "QnmRecord",
    "SeedKind",
    "SolveMethod",
    "SpectrumTable",
    "angular_a0_table",
    "bounds_table",
    "combined_condition_drift",
    "continue_in_rotation",
    "convergence_study",
    "deduplicate",
    "horizons_table",
    "leading_record",
    "leading_table",
    "mass_independence_experiment",
    "mode_grid",
    "qnm_solve",
    "random_params",
    "real_axis_scan",
    "reduction_table",
    "sample_benchmark",
    "series_oracle",
    "series_oracle_table",
    "solve_auto",
    "spectrum_table",
    "zeeman_experiment",
]
