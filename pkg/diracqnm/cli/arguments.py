from __future__ import annotations

import argparse
from typing import Callable, List, Tuple, TypeVar

from ..angular.eigenvalue import DEFAULT_BASIS_SIZE
from ..qnm.qnm_record import SolveMethod
from ..version import __version__
from .run_config import OutputFormat

T = TypeVar("T")

COMMANDS = ["validate", "horizons", "angular-spectrum", "radial-zeros", "asymptotics", "qnm", "experiments"]


def _list_of(parse: Callable[[str], T], what: str) -> Callable[[str], List[T]]:
    def parse_list(text: str) -> List[T]:
        try:
            return [parse(item.strip()) for item in text.split(",") if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"Expected a comma-separated list of {what}, got '{text}'")

    return parse_list


def parse_complex(text: str) -> complex:
    """A complex number such as 1.5-0.1j, with 'i' accepted for the imaginary unit."""
    return complex(text.replace(" ", "").replace("i", "j"))


float_list = _list_of(float, "numbers")
int_list = _list_of(int, "integers")
complex_list = _list_of(parse_complex, "complex numbers")


def int_pair(text: str) -> Tuple[int, int]:
    values = int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"Expected two comma-separated integers, got '{text}'")
    return values[0], values[1]


def _global_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("parameters")
    group.add_argument("--params", metavar="FILE", help="Flat key=value parameter file")
    group.add_argument("--M", dest="param_M", type=float, help="Black hole mass")
    group.add_argument("--Q", dest="param_Q", type=float, help="Black hole charge")
    group.add_argument("--a", dest="param_a", type=float, help="Rotation parameter")
    group.add_argument("--Lambda", dest="param_Lambda", type=float, help="Cosmological constant")
    group.add_argument("--q", dest="param_q", type=float, help="Charge of the Dirac field")
    group.add_argument("--m", dest="param_m", type=float, help="Mass of the Dirac field")

    run = parent.add_argument_group("run")
    run.add_argument("--format", default=OutputFormat.CSV.value, help="Output format: csv or json")
    run.add_argument("--output", metavar="PATH", help="Output file, stdout when omitted")
    run.add_argument("--workers", type=int, default=1, help="Number of concurrent computations")
    run.add_argument("--tol-scale", type=float, help="Factor applied to every numerical tolerance")
    run.add_argument("--N", type=int, default=DEFAULT_BASIS_SIZE, help="Angular basis size")
    run.add_argument("--no-progress", action="store_true", help="Hide progress bars")
    run.add_argument("--verbose", action="store_true", help="Log progress to stderr")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracqnm",
        description="Quasi-normal modes of charged massive Dirac fields on slowly rotating Kerr-Newman-de Sitter "
        "black holes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    parent = _global_flags()

    subparsers.add_parser("validate", parents=[parent], help="Check the admissibility inequalities")
    subparsers.add_parser("horizons", parents=[parent], help="Horizon radii and surface gravities")

    angular = subparsers.add_parser("angular-spectrum", parents=[parent], help="Angular eigenvalues mu_kl(lambda)")
    angular.add_argument("--k", type=float_list, required=True, help="Azimuthal half-integers, comma-separated")
    angular.add_argument("--l", type=int_list, required=True, help="Nonzero branch indices")
    angular.add_argument("--lambda", dest="lams", type=complex_list, required=True, help="Spectral parameters")

    radial = subparsers.add_parser("radial-zeros", parents=[parent], help="Zeros of the radial Wronskian in a box")
    radial.add_argument("--k", type=float, required=True, help="Azimuthal half-integer")
    radial.add_argument("--box", required=True, help="Search box re_min,re_max,im_min,im_max")
    fixed = radial.add_mutually_exclusive_group(required=True)
    fixed.add_argument("--fix-lambda", type=parse_complex, help="Search in omega at this lambda")
    fixed.add_argument("--fix-omega", type=parse_complex, help="Search in lambda at this omega")
    radial.add_argument("--full-system", action="store_true", help="Use the four-component system")
    radial.add_argument("--tiles", type=int_pair, default=(1, 1), help="Tiles of the box along re,im")

    asymptotics = subparsers.add_parser("asymptotics", parents=[parent], help="Semiclassical constants")
    asymptotics.add_argument("--lambda-tilde", type=float, default=1.5, help="Scaled spectral parameter")
    asymptotics.add_argument("--k-tilde", type=float, default=0.5, help="Scaled azimuthal number")

    qnm = subparsers.add_parser("qnm", parents=[parent], help="Quasi-normal modes over a grid of (k, l, m)")
    qnm.add_argument("--k", type=float_list, default=[0.5], help="Azimuthal half-integers")
    qnm.add_argument("--l", type=int_list, default=[1], help="Branch indices")
    qnm.add_argument("--overtones", type=int_list, default=[0], help="Overtone indices")
    qnm.add_argument("--seed", type=parse_complex, help="Starting lambda for a single (k, l, m)")
    qnm.add_argument("--seeds", metavar="FILE", help="JSON output of an earlier run, solved again from its lambdas")
    qnm.add_argument("--compare-leading", action="store_true", help="Append the leading-order prediction")
    qnm.add_argument(
        "--method",
        choices=SolveMethod.all_values(),
        default=SolveMethod.WRONSKIAN.value,
        help="Solve the combined condition, or tabulate the semiclassical prediction (a = 0)",
    )

    experiments = subparsers.add_parser("experiments", parents=[parent], help="Run a verification experiment")
    experiments.add_argument("name", help="Experiment name")
    experiments.add_argument("--l-halves", type=float_list, help="Values of l + 1/2")
    experiments.add_argument("--masses", type=float_list, help="Field masses")
    experiments.add_argument("--a-values", type=float_list, help="Rotation parameters")
    experiments.add_argument("--k", type=float_list, help="Azimuthal half-integers")
    experiments.add_argument("--overtone", type=int, default=0, help="Overtone index")
    experiments.add_argument("--random-seed", type=int, default=0, help="Seed of random samples")
    experiments.add_argument("--samples", type=int, default=20, help="Number of random samples")

    return parser
