from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Tuple, Union

import numpy as np
import numpy.typing as npt

from ..error.inadmissible_parameters import InadmissibleParameters
from ..error.nonphysical_parameters import NonphysicalParameters
from ..error.suggester import generate_suggestive_error_message

ROTATION_BOUND = 7.0 - 4.0 * np.sqrt(3.0)

PARAMETER_KEYS = ["M", "Q", "a", "Lambda", "q", "m"]

ArrayLike = Union[float, complex, npt.NDArray[Any]]


@dataclass(frozen=True)
class BlackHoleParams:
    """
    Physical parameters of a Kerr-Newman-de Sitter black hole together with the charge and mass of the
    Dirac field propagating on it. Geometric units, M is the free scale.
    """

    M: float
    Q: float
    a: float
    Lambda: float
    q: float = 0.0
    m: float = 0.0

    @property
    def E(self) -> float:
        return 1.0 + self.a**2 * self.Lambda / 3.0

    @property
    def zeta(self) -> float:
        return self.a**2 * self.Lambda / 3.0

    @property
    def nu(self) -> float:
        return self.a * self.m

    def delta_r(self, r: ArrayLike) -> ArrayLike:
        return (r**2 + self.a**2) * (1.0 - self.Lambda * r**2 / 3.0) - 2.0 * self.M * r + self.Q**2

    def delta_r_prime(self, r: ArrayLike) -> ArrayLike:
        return 2.0 * r * (1.0 - self.zeta) - 4.0 * self.Lambda * r**3 / 3.0 - 2.0 * self.M

    def delta_r_coefficients(self) -> npt.NDArray[np.float64]:
        """Coefficients of Δ_r in decreasing powers of r."""
        return np.array([-self.Lambda / 3.0, 0.0, 1.0 - self.zeta, -2.0 * self.M, self.a**2 + self.Q**2])

    def delta_theta(self, theta: ArrayLike) -> ArrayLike:
        return 1.0 + self.zeta * np.cos(theta) ** 2

    def F(self, r: ArrayLike) -> ArrayLike:
        """The a = 0 lapse function 1 − 2M/r + Q²/r² − Λr²/3."""
        return 1.0 - 2.0 * self.M / r + self.Q**2 / r**2 - self.Lambda * r**2 / 3.0

    def F_prime(self, r: ArrayLike) -> ArrayLike:
        return 2.0 * self.M / r**2 - 2.0 * self.Q**2 / r**3 - 2.0 * self.Lambda * r / 3.0

    def F_second(self, r: ArrayLike) -> ArrayLike:
        return -4.0 * self.M / r**3 + 6.0 * self.Q**2 / r**4 - 2.0 * self.Lambda / 3.0

    def with_changes(self, **changes: float) -> BlackHoleParams:
        return replace(self, **changes)

    def to_record(self) -> Dict[str, float]:
        return {key: float(getattr(self, key)) for key in PARAMETER_KEYS}

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> BlackHoleParams:
        for key in values:
            if key not in PARAMETER_KEYS:
                raise NonphysicalParameters(generate_suggestive_error_message("parameter", key, PARAMETER_KEYS))

        missing = [key for key in ["M", "Lambda"] if key not in values]
        if missing:
            raise NonphysicalParameters(f"Missing required parameters: {', '.join(missing)}")

        try:
            parsed = {key: float(value) for key, value in values.items()}
        except ValueError as e:
            raise NonphysicalParameters(f"Parameter values must be decimal numbers: {e}")

        return cls(
            M=parsed["M"],
            Q=parsed.get("Q", 0.0),
            a=parsed.get("a", 0.0),
            Lambda=parsed["Lambda"],
            q=parsed.get("q", 0.0),
            m=parsed.get("m", 0.0),
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> BlackHoleParams:
        """
        Read a flat `key=value` parameter file.

        Blank lines and lines starting with `#` are ignored.

        Args:
            path: The file to read.

        Returns:
            The parsed parameter set.
        """
        values: Dict[str, str] = {}
        with open(path, "r", encoding="utf-8") as f:
            for lineno, raw_line in enumerate(f, start=1):
                line = raw_line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise NonphysicalParameters(f"{path}:{lineno}: expected 'key=value', got '{line}'")
                key, value = (part.strip() for part in line.split("=", 1))
                if key in values:
                    raise NonphysicalParameters(f"{path}:{lineno}: duplicate key '{key}'")
                values[key] = value

        return cls.from_mapping(values)


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    rotation_value: float
    M_crit_minus: float
    M_crit_plus: float
    violated: List[str] = field(default_factory=list)

    def require(self) -> None:
        if not self.admissible:
            raise InadmissibleParameters(self.violated)

    def to_record(self) -> Dict[str, Any]:
        return {
            "admissible": self.admissible,
            "rotation_value": self.rotation_value,
            "rotation_bound": ROTATION_BOUND,
            "M_crit_minus": self.M_crit_minus,
            "M_crit_plus": self.M_crit_plus,
            "violated": "; ".join(self.violated),
        }


def critical_masses(p: BlackHoleParams) -> Tuple[float, float]:
    """
    The window (M_crit⁻, M_crit⁺) of masses with three simple positive horizons.

    Returns NaN for both bounds when E_-² < F, in which case no mass is admissible.
    """
    E_minus = 1.0 - p.zeta
    F = 4.0 * p.Lambda * (p.a**2 + p.Q**2)
    disc = E_minus**2 - F
    if disc < 0 or E_minus <= 0:
        return float("nan"), float("nan")

    root = np.sqrt(disc)
    prefactor = 1.0 / np.sqrt(18.0 * p.Lambda)
    M_minus = prefactor * np.sqrt(E_minus - root) * (2.0 * E_minus + root)
    M_plus = prefactor * np.sqrt(E_minus + root) * (2.0 * E_minus - root)

    return float(M_minus), float(M_plus)


def validate_params(p: BlackHoleParams) -> Admissibility:
    """
    Check the rotation bound a²Λ/3 ≤ 7 − 4√3 and the mass window M_crit⁻ < M < M_crit⁺.

    Args:
        p: The parameter set.

    Returns:
        The verdict with the critical masses and the list of violated inequalities.
    """
    if not p.M > 0:
        raise NonphysicalParameters(f"The mass M must be positive, got {p.M}")
    if not p.Lambda > 0:
        raise NonphysicalParameters(f"The cosmological constant Lambda must be positive, got {p.Lambda}")
    if p.m < 0:
        raise NonphysicalParameters(f"The field mass m must be nonnegative, got {p.m}")

    violated = []
    if p.zeta > ROTATION_BOUND:
        violated.append(f"a^2*Lambda/3 = {p.zeta:.6g} exceeds 7-4*sqrt(3) = {ROTATION_BOUND:.6g}")

    M_minus, M_plus = critical_masses(p)
    if np.isnan(M_minus):
        violated.append("E_-^2 < 4*Lambda*(a^2+Q^2): no mass window exists")
    else:
        if not M_minus < p.M:
            violated.append(f"M = {p.M:.6g} is not above M_crit^- = {M_minus:.6g}")
        if not p.M < M_plus:
            violated.append(f"M = {p.M:.6g} is not below M_crit^+ = {M_plus:.6g}")

    return Admissibility(
        admissible=not violated,
        rotation_value=p.zeta,
        M_crit_minus=M_minus,
        M_crit_plus=M_plus,
        violated=violated,
    )
