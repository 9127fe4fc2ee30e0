from itertools import product
from typing import Any, Dict, Optional, Sequence, Tuple

from pandas import DataFrame

from ..parallel import ordered_map
from ..spacetime.black_hole_params import BlackHoleParams
from ..tolerances import Tolerances
from .angular_mode import AngularMode
from .eigenvalue import DEFAULT_BASIS_SIZE, eigenvalue

SPECTRUM_COLUMNS = ["k", "l", "lambda_re", "lambda_im", "mu_re", "mu_im", "est_error"]


def angular_spectrum(
    p: BlackHoleParams,
    ks: Sequence[float],
    ls: Sequence[int],
    lams: Sequence[complex],
    N: int = DEFAULT_BASIS_SIZE,
    tolerances: Optional[Tolerances] = None,
    workers: int = 1,
    show_progress: bool = False,
) -> DataFrame:
    """
    Table of μ_kl(λ) over a grid of modes and spectral parameters, one row per (k, l, λ).
    """
    tol = tolerances or Tolerances.from_env()
    grid = [(AngularMode(k, l), complex(lam)) for k, l, lam in product(ks, ls, lams)]

    def solve(item: Tuple[AngularMode, complex]) -> Dict[str, Any]:
        mode, lam = item
        return eigenvalue(p, mode, lam, N, tol).to_record()

    records = ordered_map(solve, grid, workers=workers, show_progress=show_progress, desc="angular spectrum")
    return DataFrame.from_records(records, columns=SPECTRUM_COLUMNS)
