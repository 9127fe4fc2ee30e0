from __future__ import annotations

from argparse import Namespace
from dataclasses import dataclass, fields
from enum import Enum
from typing import Any, Dict, List, Optional

from ..angular.eigenvalue import DEFAULT_BASIS_SIZE
from ..error.nonphysical_parameters import NonphysicalParameters
from ..error.suggester import generate_suggestive_error_message
from ..spacetime.black_hole_params import PARAMETER_KEYS, BlackHoleParams
from ..tolerances import Tolerances


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"

    @classmethod
    def all_values(cls) -> List[str]:
        return [e.value for e in cls]

    @staticmethod
    def parse(name: str) -> OutputFormat:
        try:
            return OutputFormat(name.lower())
        except ValueError:
            raise ValueError(generate_suggestive_error_message("output format", name, OutputFormat.all_values()))


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs besides its own arguments."""

    command: str
    params: BlackHoleParams
    output_format: OutputFormat = OutputFormat.CSV
    # None writes to stdout
    output: Optional[str] = None
    tolerances: Tolerances = Tolerances()
    workers: int = 1
    N: int = DEFAULT_BASIS_SIZE
    show_progress: bool = True
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValueError(f"The worker count must be at least 1, got {self.workers}")
        for f in fields(self.tolerances):
            value = getattr(self.tolerances, f.name)
            if not value > 0:
                raise ValueError(f"Tolerance '{f.name}' must be positive, got {value}")

    @staticmethod
    def from_namespace(args: Namespace) -> RunConfig:
        """
        Build the configuration from parsed arguments: the parameter file first, then individual parameter
        flags on top of it.

        Raises:
            NonphysicalParameters: When the parameters are missing, malformed or carry unknown keys.
        """
        values: Dict[str, Any] = {}
        if args.params is not None:
            values.update(BlackHoleParams.from_file(args.params).to_record())
        for key in PARAMETER_KEYS:
            flag = getattr(args, f"param_{key}", None)
            if flag is not None:
                values[key] = flag
        if not values:
            raise NonphysicalParameters("No parameters given: pass --params FILE or at least --M and --Lambda")

        tolerances = Tolerances.from_env()
        if args.tol_scale is not None:
            tolerances = tolerances.scaled(args.tol_scale)

        return RunConfig(
            command=args.command,
            params=BlackHoleParams.from_mapping(values),
            output_format=OutputFormat.parse(args.format),
            output=args.output,
            tolerances=tolerances,
            workers=args.workers,
            N=args.N,
            show_progress=not args.no_progress,
            verbose=args.verbose,
        )
