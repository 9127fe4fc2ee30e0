from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np
import numpy.typing as npt


@dataclass(frozen=True)
class ScaledComplex:
    """A complex number stored as exp(log_scale)·mantissa, so that neither factor overflows."""

    log_scale: complex
    mantissa: complex

    @property
    def value(self) -> complex:
        return complex(np.exp(self.log_scale) * self.mantissa)

    @property
    def log_abs(self) -> float:
        if self.mantissa == 0:
            return float("-inf")
        return float(self.log_scale.real + np.log(abs(self.mantissa)))

    def ratio(self, other: ScaledComplex) -> complex:
        """self/other, evaluated without forming either value."""
        return complex(np.exp(self.log_scale - other.log_scale) * self.mantissa / other.mantissa)

    def __mul__(self, other: ScaledComplex) -> ScaledComplex:
        return ScaledComplex(self.log_scale + other.log_scale, self.mantissa * other.mantissa)


@dataclass(frozen=True)
class LogSpinor:
    """A spinor exp(log_scale)·vector with |vector| = 1, or the zero spinor."""

    log_scale: complex
    vector: npt.NDArray[np.complex128]

    @staticmethod
    def from_vector(vector: npt.NDArray[np.complex128], log_scale: complex = 0.0) -> LogSpinor:
        vector = np.asarray(vector, dtype=complex)
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            return LogSpinor(complex(log_scale), vector)
        return LogSpinor(complex(log_scale) + np.log(norm), vector / norm)

    @property
    def dim(self) -> int:
        return len(self.vector)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.vector)

    def value(self) -> npt.NDArray[np.complex128]:
        return np.exp(self.log_scale) * self.vector

    def swap_conjugate(self) -> LogSpinor:
        """σ₁ applied to the complex conjugate, for two-component spinors."""
        return LogSpinor(np.conj(self.log_scale), np.conj(self.vector[::-1]))


def determinant(columns: List[LogSpinor]) -> ScaledComplex:
    matrix = np.column_stack([c.vector for c in columns])
    return ScaledComplex(complex(sum(c.log_scale for c in columns)), complex(np.linalg.det(matrix)))
