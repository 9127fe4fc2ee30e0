from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..parallel import ordered_map
from ..spacetime.background import Background
from ..spacetime.horizons import Side
from .argument_principle import LocatedZero, SearchBox, locate_zeros
from .horizon_series import gamma_argument, pole_index
from .log_spinor import ScaledComplex
from .radial_problem import RadialProblem
from .wronskian import wronskian


@dataclass(frozen=True)
class RadialZero:
    lam: complex
    omega: complex
    k: float
    multiplicity: int
    residual: float
    winding_box: str
    # The zero sits at an exceptional point, where an outgoing solution may vanish identically
    degenerate: bool

    def to_record(self) -> Dict[str, Any]:
        return {
            "lambda_re": self.lam.real,
            "lambda_im": self.lam.imag,
            "omega_re": self.omega.real,
            "omega_im": self.omega.imag,
            "k": self.k,
            "multiplicity": self.multiplicity,
            "residual": self.residual,
            "winding_box": self.winding_box,
            "degenerate": self.degenerate,
        }


def is_exceptional(background: Background, lam: complex, k: float) -> bool:
    """λ ∈ Ω_± ± i(κ_±/2)(ℤ₊ + 1), where the normalizing 1/Γ factor of an outgoing solution vanishes."""
    H = background.horizons
    for side in Side.all_values():
        z = gamma_argument(lam, H.omega(side, k), H.kappa(side), side)
        if pole_index(z) is not None:
            return True
    return False


def radial_resonances(
    background: Background,
    k: float,
    box: SearchBox,
    lam: Optional[complex] = None,
    omega: Optional[complex] = None,
    full_system: bool = False,
    tiles: Tuple[int, int] = (1, 1),
    workers: int = 1,
    show_progress: bool = False,
) -> List[RadialZero]:
    """
    Zeros of the Wronskian in one spectral variable with the other held fixed.

    Exactly one of `lam` and `omega` is given; the box lives in the plane of the other. The box is cut into
    `tiles` boxes that are searched independently, in parallel when `workers` > 1.

    Args:
        background: The black hole.
        k: The azimuthal half-integer.
        box: The search box.
        lam: The fixed value of λ, when searching in ω.
        omega: The fixed value of ω, when searching in λ.
        full_system: Use the four-component system of a massive field instead of the two-component block.
        tiles: Number of tiles along the real and imaginary axes.
        workers: Number of worker threads.
        show_progress: Show a progress bar over the tiles.

    Returns:
        The zeros with their multiplicities, ordered by tile and then by real part.
    """
    if lam is None and omega is not None:
        fixed, search_lambda = complex(omega), True
    elif omega is None and lam is not None:
        fixed, search_lambda = complex(lam), False
    else:
        raise ValueError("Exactly one of lambda and omega must be fixed")

    def problem(z: complex) -> RadialProblem:
        if search_lambda:
            return RadialProblem(background, z, fixed, k, full_system)
        return RadialProblem(background, fixed, z, k, full_system)

    def W(z: complex) -> ScaledComplex:
        return wronskian(problem(z)).value

    def search(tile: SearchBox) -> List[LocatedZero]:
        return locate_zeros(W, tile, background.tolerances.newton_step)

    found = ordered_map(search, box.tiles(*tiles), workers, show_progress, desc="Resonance search")

    zeros = []
    for located in (zero for tile in found for zero in tile):
        prob = problem(located.z)
        if located.residual > background.tolerances.residual:
            logging.getLogger().warning(
                f"Zero at {located.z} has residual {located.residual:.3g} above {background.tolerances.residual:.3g}"
            )
        zeros.append(
            RadialZero(
                lam=complex(prob.lam),
                omega=complex(prob.omega),
                k=k,
                multiplicity=located.multiplicity,
                residual=located.residual,
                winding_box=located.box.label(),
                degenerate=is_exceptional(background, prob.lam, k),
            )
        )

    return zeros
