from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..angular.angular_mode import AngularMode
from .photon_sphere import PhotonSphereData


def _check_indices(psd: PhotonSphereData, l: float, m: int) -> None:
    if psd.params.a != 0:
        raise ValueError(f"The leading formula holds for a = 0, got a={psd.params.a}")
    if not float(l - 0.5).is_integer() or l < 0.5:
        raise ValueError(f"The index l must be a positive half-integer, got {l}")
    if m < 0:
        raise ValueError(f"The overtone index must be nonnegative, got {m}")


def leading_qnm(psd: PhotonSphereData, l: float, m: int) -> complex:
    """
    z_0(l + 1/2) − i(α/z_0)(m + 1/2), the quasi-normal mode of the non-rotating black hole up to
    O((l + 1/2)^{-1}).

    Args:
        psd: Photon sphere data of a parameter set with a = 0.
        l: The half-integer total angular index.
        m: The overtone index.
    """
    _check_indices(psd, l, m)
    return complex(psd.z_0 * (l + 0.5), -(psd.alpha / psd.z_0) * (m + 0.5))


def lattice_index(mode: AngularMode) -> float:
    """
    The half-integer l of the leading formula for an angular mode: l + 1/2 = |k| − 1/2 + l_ang.

    This is the a = 0 identity between the two labellings; for a ≠ 0 the angular mode is continued from it.
    """
    return mode.total_index - 0.5


def leading_qnm_for_mode(psd: PhotonSphereData, mode: AngularMode, m: int) -> complex:
    return leading_qnm(psd, lattice_index(mode), m)


def next_order_correction(psd: PhotonSphereData, l: float, m: int, b02: float, b12: float) -> complex:
    """
    The leading formula with its (l + 1/2)^{-1} term,

        −(α/z_0)(m + 1/2)/(l + 1/2)·[−α(2m + 1)/(4z_0²) + b02(2m + 1)/2 + i·b12],

    where the real constants b02 and b12 are not known in closed form.
    """
    leading = leading_qnm(psd, l, m)
    return leading + _correction_factor(psd, l, m) * complex(
        -psd.alpha * (2 * m + 1) / (4.0 * psd.z_0**2) + 0.5 * b02 * (2 * m + 1), b12
    )


def _correction_factor(psd: PhotonSphereData, l: float, m: int) -> float:
    return float(-(psd.alpha / psd.z_0) * (m + 0.5) / (l + 0.5))


@dataclass(frozen=True)
class NextOrderFit:
    b02: float
    b12: float
    residual: float


def fit_next_order(psd: PhotonSphereData, samples: Sequence[Tuple[float, int, complex]]) -> NextOrderFit:
    """
    Least-squares fit of b02 and b12 to computed modes.

    Args:
        psd: Photon sphere data of a parameter set with a = 0.
        samples: Triples (l, m, λ) of computed quasi-normal modes.

    Returns:
        The constants and the root-mean-square deviation of the corrected formula from the samples.
    """
    if len(samples) < 1:
        raise ValueError("Fitting the next-order constants needs at least one computed mode")

    rows = []
    rhs = []
    for l, m, lam in samples:
        c = _correction_factor(psd, l, m)
        known = leading_qnm(psd, l, m) + c * (-psd.alpha * (2 * m + 1) / (4.0 * psd.z_0**2))
        deviation = complex(lam) - known
        rows.append([c * 0.5 * (2 * m + 1), 0.0])
        rhs.append(deviation.real)
        rows.append([0.0, c])
        rhs.append(deviation.imag)

    (b02, b12), *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    errors = [abs(next_order_correction(psd, l, m, b02, b12) - lam) for l, m, lam in samples]

    return NextOrderFit(float(b02), float(b12), float(np.sqrt(np.mean(np.square(errors)))))
