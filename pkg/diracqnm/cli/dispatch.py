from __future__ import annotations

import logging
import sys
from typing import List, Optional

from ..error.continuation_ambiguity import ContinuationAmbiguity
from ..error.convergence_failure import ConvergenceFailure, ZeroCountMismatch
from ..error.degenerate_horizons import DegenerateHorizons
from ..error.series_errors import GammaPole, RadiusExceeded
from ..error.stiffness_error import StiffnessError
from ..error.suggester import generate_suggestive_error_message
from ..error.trapping_errors import DegenerateTrapping, NoInteriorTrapping, NoPhotonSphere
from .arguments import COMMANDS, build_parser
from .commands import COMMAND_RUNNERS
from .experiment_runner import lookup_experiment
from .output_writer import write_frame
from .run_config import RunConfig

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# ValueError covers NonphysicalParameters, InadmissibleParameters and OutsideDomain
COMPUTATION_ERRORS = (
    ValueError,
    ContinuationAmbiguity,
    ConvergenceFailure,
    ZeroCountMismatch,
    DegenerateHorizons,
    GammaPole,
    RadiusExceeded,
    StiffnessError,
    DegenerateTrapping,
    NoInteriorTrapping,
    NoPhotonSphere,
)


def _error(message: str) -> None:
    print(f"diracqnm: error: {message}", file=sys.stderr)


def _unknown_command(argv: List[str]) -> Optional[str]:
    first = next((arg for arg in argv if not arg.startswith("-")), None)
    if first is None or first in COMMANDS:
        return None
    return first


def dispatch(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        0 on success, 1 when the computation fails and 2 on a usage error.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()

    unknown = _unknown_command(argv)
    if unknown is not None:
        parser.print_usage(sys.stderr)
        _error(generate_suggestive_error_message("subcommand", unknown, COMMANDS))
        return EXIT_USAGE

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = RunConfig.from_namespace(args)
        if config.command == "experiments":
            lookup_experiment(args.name)
    except (ValueError, OSError) as e:
        _error(str(e))
        return EXIT_USAGE

    try:
        result = COMMAND_RUNNERS[config.command](config, args)
    except COMPUTATION_ERRORS as e:
        _error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE

    try:
        write_frame(result.frame, config.output_format, config.output)
    except OSError as e:
        _error(f"Cannot write the output: {e}")
        return EXIT_FAILURE

    for failure in result.failures:
        _error(failure)
    return EXIT_FAILURE if result.failures else EXIT_OK


def main() -> None:
    sys.exit(dispatch())
