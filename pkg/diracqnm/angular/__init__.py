from .angular_mode import AngularMode, exact_eigenvalue_a0
from .discretization import AngularDiscretization, discretize
from .eigenvalue import AngularEigenvalue, eigenvalue, eigenvalue_bounds
from .spectrum import angular_spectrum
from .squared_operator import squared_operator_check

__all__ = [
    "AngularDiscretization",
    "AngularEigenvalue",
    "AngularMode",
    "angular_spectrum",
    "discretize",
    "eigenvalue",
    "eigenvalue_bounds",
    "exact_eigenvalue_a0",
    "squared_operator_check",
]
