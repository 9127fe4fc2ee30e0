from .background import Background
from .black_hole_params import Admissibility, BlackHoleParams, validate_params
from .coefficients import CoefficientFunctions, coeff_functions
from .horizon_chart import HorizonChart, horizon_chart
from .horizons import HorizonSet, Side, horizon_roots, photon_sphere_radius
from .regge_wheeler import ReggeWheelerMap, regge_wheeler

__all__ = [
    "Admissibility",
    "Background",
    "BlackHoleParams",
    "CoefficientFunctions",
    "HorizonChart",
    "HorizonSet",
    "ReggeWheelerMap",
    "Side",
    "coeff_functions",
    "horizon_chart",
    "horizon_roots",
    "photon_sphere_radius",
    "regge_wheeler",
    "validate_params",
]
