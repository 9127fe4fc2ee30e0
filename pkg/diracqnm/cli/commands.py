from __future__ import annotations

import json
import logging
from argparse import Namespace
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from pandas import DataFrame

from ..angular.angular_mode import AngularMode
from ..angular.spectrum import angular_spectrum
from ..qnm.qnm_record import QnmFailure, QnmRecord, SolveMethod
from ..qnm.solver import qnm_solve
from ..qnm.spectrum_table import SOLVER_ERRORS, SpectrumTable, leading_table, spectrum_table
from ..radial.argument_principle import SearchBox
from ..radial.resonances import radial_resonances
from ..semiclassical.photon_sphere import kerr_ds_check, photon_sphere
from ..semiclassical.quantization import combined_quantization, zeeman_slopes
from ..semiclassical.symbols import angular_symbol, radial_symbol
from ..spacetime.background import Background
from ..spacetime.black_hole_params import validate_params
from ..spacetime.horizons import horizon_roots
from .experiment_runner import lookup_experiment
from .run_config import RunConfig


@dataclass(frozen=True)
class CommandResult:
    frame: DataFrame
    # Reported on stderr; a nonempty list makes the run fail
    failures: List[str] = field(default_factory=list)


def run_validate(config: RunConfig, args: Namespace) -> CommandResult:
    admissibility = validate_params(config.params)
    frame = DataFrame([{**config.params.to_record(), **admissibility.to_record()}])
    return CommandResult(frame, admissibility.violated)


def run_horizons(config: RunConfig, args: Namespace) -> CommandResult:
    H = horizon_roots(config.params, config.tolerances)
    return CommandResult(DataFrame([H.to_record()]))


def run_angular_spectrum(config: RunConfig, args: Namespace) -> CommandResult:
    frame = angular_spectrum(
        config.params,
        args.k,
        args.l,
        args.lams,
        N=config.N,
        tolerances=config.tolerances,
        workers=config.workers,
        show_progress=config.show_progress,
    )
    return CommandResult(frame)


def run_radial_zeros(config: RunConfig, args: Namespace) -> CommandResult:
    zeros = radial_resonances(
        Background.build(config.params, config.tolerances),
        args.k,
        SearchBox.parse(args.box),
        lam=args.fix_lambda,
        omega=args.fix_omega,
        full_system=args.full_system,
        tiles=args.tiles,
        workers=config.workers,
        show_progress=config.show_progress,
    )
    return CommandResult(DataFrame([z.to_record() for z in zeros]))


def run_asymptotics(config: RunConfig, args: Namespace) -> CommandResult:
    p = config.params
    psd = photon_sphere(p)
    lam_tilde, k_tilde = args.lambda_tilde, args.k_tilde
    zeeman_minus, zeeman_plus = zeeman_slopes(psd)
    discrepancies = kerr_ds_check(p)
    edge = combined_quantization(psd, k_tilde, k_tilde)

    record: Dict[str, object] = {
        "r0": psd.r_0,
        "z0": psd.z_0,
        "alpha": psd.alpha,
        "H_per_ktilde": psd.H(1.0),
        "Fr0_plus": radial_symbol(psd, lam_tilde, k_tilde),
        "Ftheta0": angular_symbol(lam_tilde, k_tilde, p.a, p.E, k_tilde).value,
        "zeeman_slope_minus": zeeman_minus,
        "zeeman_slope_plus": zeeman_plus,
        "kerr_ds_check": max(discrepancies.values()),
        "lambda_tilde_edge": edge.lam_tilde,
        "in_window": edge.in_window,
    }
    record.update({f"kerr_ds_{name}": value for name, value in discrepancies.items()})
    return CommandResult(DataFrame([record]))


def _load_seeds(path: str) -> List[QnmRecord]:
    with open(path, "r", encoding="utf-8") as f:
        content = json.load(f)
    if not isinstance(content, list):
        raise ValueError(f"{path} must hold a JSON array of QNM records")
    try:
        return [QnmRecord.from_record(record) for record in content]
    except (KeyError, TypeError) as e:
        raise ValueError(f"{path} does not hold QNM records: missing or malformed field {e}")


def _solve_seeded(config: RunConfig, items: List[Tuple[AngularMode, int, complex]]) -> SpectrumTable:
    records: List[QnmRecord] = []
    failures: List[QnmFailure] = []
    for mode, m, seed in items:
        try:
            records.append(qnm_solve(config.params, mode, m, seed, N=config.N, tolerances=config.tolerances))
        except SOLVER_ERRORS as e:
            logging.getLogger().warning(f"No QNM for k={mode.k}, l={mode.l}, m={m} from seed {seed}: {e}")
            failures.append(QnmFailure(mode, m, type(e).__name__, str(e)))
    return SpectrumTable(records, failures)


def run_qnm(config: RunConfig, args: Namespace) -> CommandResult:
    if SolveMethod(args.method) == SolveMethod.SEMICLASSICAL:
        if args.seeds is not None or args.seed is not None:
            raise ValueError("Semiclassical predictions take no seeds")
        table = leading_table(config.params, args.k, args.l, args.overtones)
    elif args.seeds is not None:
        table = _solve_seeded(config, [(r.mode, r.m, r.lam) for r in _load_seeds(args.seeds)])
    elif args.seed is not None:
        if len(args.k) != 1 or len(args.l) != 1 or len(args.overtones) != 1:
            raise ValueError("--seed needs a single k, l and overtone")
        table = _solve_seeded(config, [(AngularMode(args.k[0], args.l[0]), args.overtones[0], args.seed)])
    else:
        table = spectrum_table(
            config.params,
            args.k,
            args.l,
            args.overtones,
            N=config.N,
            workers=config.workers,
            show_progress=config.show_progress,
            tolerances=config.tolerances,
        )

    frame = table.to_frame(compare_leading=args.compare_leading, params=config.params)
    failures = [f"k={f.mode.k}, l={f.mode.l}, m={f.m}: {f.error}: {f.message}" for f in table.failures]
    return CommandResult(frame, failures)


def run_experiments(config: RunConfig, args: Namespace) -> CommandResult:
    return CommandResult(lookup_experiment(args.name)(config, args))


COMMAND_RUNNERS: Dict[str, Callable[[RunConfig, Namespace], CommandResult]] = {
    "validate": run_validate,
    "horizons": run_horizons,
    "angular-spectrum": run_angular_spectrum,
    "radial-zeros": run_radial_zeros,
    "asymptotics": run_asymptotics,
    "qnm": run_qnm,
    "experiments": run_experiments,
}
