from .leading import (
    NextOrderFit,
    fit_next_order,
    lattice_index,
    leading_qnm,
    leading_qnm_for_mode,
    next_order_correction,
)
from .photon_sphere import PhotonSphereData, kerr_ds_check, photon_sphere
from .quantization import CombinedQuantization, combined_quantization, zeeman_slopes
from .symbols import AngularSymbol, angular_symbol, bottom_of_well, overtone_condition, radial_symbol
from .trapping import BetaZero, TrappedFrequency, beta0, trapped_frequency

__all__ = [
    "AngularSymbol",
    "BetaZero",
    "CombinedQuantization",
    "NextOrderFit",
    "PhotonSphereData",
    "TrappedFrequency",
    "angular_symbol",
    "beta0",
    "bottom_of_well",
    "combined_quantization",
    "fit_next_order",
    "kerr_ds_check",
    "lattice_index",
    "leading_qnm",
    "leading_qnm_for_mode",
    "next_order_correction",
    "overtone_condition",
    "photon_sphere",
    "radial_symbol",
    "trapped_frequency",
    "zeeman_slopes",
]
