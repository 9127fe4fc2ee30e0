from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List

from ..angular.angular_mode import AngularMode


class SolveMethod(Enum):
    SEMICLASSICAL = "semiclassical"
    WRONSKIAN = "wronskian"

    @classmethod
    def all_values(cls) -> List[str]:
        return [e.value for e in cls]


class SeedKind(Enum):
    LEADING = "leading"
    USER = "user"
    CONTINUATION = "continuation"

    @classmethod
    def all_values(cls) -> List[str]:
        return [e.value for e in cls]


def _float_or_nan(value: Any) -> float:
    # JSON output writes NaN as null
    return float("nan") if value is None else float(value)


@dataclass(frozen=True)
class QnmRecord:
    """A quasi-normal mode: a zero of λ ↦ W(λ, μ_kl(λ), k) in the lower half-plane."""

    lam: complex
    mode: AngularMode
    m: int
    mu: complex
    # Last Newton step |W/W'| relative to max(1, |λ|); NaN for semiclassical predictions
    residual: float
    # |W| relative to the free Wronskian v₁⁺(0)v₂⁻(0), the acceptance criterion of computed modes
    scaled_wronskian: float
    method: SolveMethod
    seed: complex
    seed_kind: SeedKind
    iterations: int

    def to_record(self) -> Dict[str, Any]:
        return {
            "k": self.mode.k,
            "l": self.mode.l,
            "m": self.m,
            "lambda_re": self.lam.real,
            "lambda_im": self.lam.imag,
            "residual": self.residual,
            "seed_re": self.seed.real,
            "seed_im": self.seed.imag,
            "method": self.method.value,
            "seed_kind": self.seed_kind.value,
            "mu_re": self.mu.real,
            "mu_im": self.mu.imag,
            "scaled_wronskian": self.scaled_wronskian,
            "iterations": self.iterations,
        }

    @staticmethod
    def from_record(record: Dict[str, Any]) -> QnmRecord:
        return QnmRecord(
            lam=complex(record["lambda_re"], record["lambda_im"]),
            mode=AngularMode(float(record["k"]), int(record["l"])),
            m=int(record["m"]),
            mu=complex(record["mu_re"], record["mu_im"]),
            residual=_float_or_nan(record["residual"]),
            scaled_wronskian=_float_or_nan(record["scaled_wronskian"]),
            method=SolveMethod(record["method"]),
            seed=complex(record["seed_re"], record["seed_im"]),
            seed_kind=SeedKind(record["seed_kind"]),
            iterations=int(record["iterations"]),
        )


@dataclass(frozen=True)
class QnmFailure:
    mode: AngularMode
    m: int
    error: str
    message: str

    def to_record(self) -> Dict[str, Any]:
        return {"k": self.mode.k, "l": self.mode.l, "m": self.m, "error": self.error, "message": self.message}
