from .angular import AngularMode, eigenvalue
from .qnm import QnmRecord, qnm_solve, spectrum_table
from .spacetime import Background, BlackHoleParams, validate_params
from .tolerances import Tolerances
from .version import __version__

__all__ = [
    "AngularMode",
    "Background",
    "BlackHoleParams",
    "QnmRecord",
    "Tolerances",
    "__version__",
    "eigenvalue",
    "qnm_solve",
    "spectrum_table",
    "validate_params",
]
