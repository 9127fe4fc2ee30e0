from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .error.nonphysical_parameters import NonphysicalParameters

TOL_OVERRIDE_ENV = "QNM_TOL_OVERRIDE"


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances shared by every solver of the package.

    All values are relative unless stated otherwise.
    """

    root_polish: float = 1e-14
    newton_step: float = 1e-10
    residual: float = 1e-9
    ode_rtol: float = 1e-12
    ode_atol: float = 1e-14
    angular_truncation: float = 1e-9
    collision: float = 1e-8
    series_tail: float = 1e-14

    def scaled(self, factor: float) -> Tolerances:
        if not factor > 0:
            raise NonphysicalParameters(f"Tolerance scale must be positive, got {factor}")

        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})

    @staticmethod
    def from_env() -> Tolerances:
        """
        Default tolerances, scaled by the `QNM_TOL_OVERRIDE` environment variable when it is set.

        Returns:
            The tolerances to use for this process.
        """
        override = os.environ.get(TOL_OVERRIDE_ENV)
        if not override:
            return Tolerances()

        try:
            factor = float(override)
        except ValueError:
            raise NonphysicalParameters(f"{TOL_OVERRIDE_ENV} must be a positive number, got '{override}'")

        return Tolerances().scaled(factor)
