from .argument_principle import LocatedZero, SearchBox, locate_zeros, winding_number
from .complex_newton import NewtonResult, log_derivative, newton
from .horizon_series import HorizonSeries, evaluate_outgoing, horizon_series
from .integration import integrate_interior
from .log_spinor import LogSpinor, ScaledComplex
from .radial_problem import RadialProblem, conjugate_solution
from .resonances import RadialZero, is_exceptional, radial_resonances
from .schrodinger import ReductionCheck, schrodinger_potentials, schrodinger_reduction_check
from .wronskian import WronskianValue, free_wronskian_scale, wronskian

__all__ = [
    "HorizonSeries",
    "LocatedZero",
    "LogSpinor",
    "NewtonResult",
    "RadialProblem",
    "RadialZero",
    "ReductionCheck",
    "ScaledComplex",
    "SearchBox",
    "WronskianValue",
    "conjugate_solution",
    "evaluate_outgoing",
    "free_wronskian_scale",
    "horizon_series",
    "integrate_interior",
    "is_exceptional",
    "locate_zeros",
    "log_derivative",
    "newton",
    "radial_resonances",
    "schrodinger_potentials",
    "schrodinger_reduction_check",
    "winding_number",
    "wronskian",
]
