from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..error.convergence_failure import ConvergenceFailure, ZeroCountMismatch
from .complex_newton import ScaledFunction, newton
from .log_spinor import ScaledComplex

# Largest phase change of G accepted between neighbouring contour points
MAX_PHASE_STEP = np.pi / 4
MAX_BISECTIONS = 14
INITIAL_POINTS_PER_EDGE = 8
# Boxes holding more zeros than this are subdivided before Newton is attempted
MAX_WINDING = 3
# Split points tried in turn when a child contour passes too close to a zero
SPLIT_FRACTIONS = (0.4871, 0.5379, 0.4419)


@dataclass(frozen=True)
class SearchBox:
    """The closed rectangle [re_min, re_max] × [im_min, im_max] of the complex plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self) -> None:
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError(f"Empty search box {self.label()}")

    @property
    def scale(self) -> float:
        return max(self.re_max - self.re_min, self.im_max - self.im_min)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    def corners(self) -> List[complex]:
        """Counterclockwise, starting at the lower left corner."""
        return [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]

    def contains(self, z: complex) -> bool:
        return self.re_min <= z.real <= self.re_max and self.im_min <= z.imag <= self.im_max

    def edge_distance(self, z: complex) -> float:
        return min(z.real - self.re_min, self.re_max - z.real, z.imag - self.im_min, self.im_max - z.imag)

    def split(self, fraction: float = SPLIT_FRACTIONS[0]) -> List[SearchBox]:
        re_mid = self.re_min + fraction * (self.re_max - self.re_min)
        im_mid = self.im_min + fraction * (self.im_max - self.im_min)
        return [
            SearchBox(self.re_min, re_mid, self.im_min, im_mid),
            SearchBox(re_mid, self.re_max, self.im_min, im_mid),
            SearchBox(re_mid, self.re_max, im_mid, self.im_max),
            SearchBox(self.re_min, re_mid, im_mid, self.im_max),
        ]

    def tiles(self, n_re: int, n_im: int) -> List[SearchBox]:
        re = np.linspace(self.re_min, self.re_max, n_re + 1)
        im = np.linspace(self.im_min, self.im_max, n_im + 1)
        return [SearchBox(re[i], re[i + 1], im[j], im[j + 1]) for j in range(n_im) for i in range(n_re)]

    def label(self) -> str:
        return f"[{self.re_min:.6g},{self.re_max:.6g}]x[{self.im_min:.6g},{self.im_max:.6g}]"

    @staticmethod
    def parse(text: str) -> SearchBox:
        """Read 're_min,re_max,im_min,im_max'."""
        try:
            values = [float(v) for v in text.split(",")]
        except ValueError:
            raise ValueError(f"A search box is four comma-separated numbers, got '{text}'")
        if len(values) != 4:
            raise ValueError(f"A search box is four comma-separated numbers, got '{text}'")
        return SearchBox(*values)


@dataclass(frozen=True)
class LocatedZero:
    z: complex
    multiplicity: int
    box: SearchBox
    # |G(z)| relative to the median of |G| on the boundary of the box it was found in
    residual: float


class ContourHit(Exception):
    pass


class CachedFunction:
    """Memoizes the values of a function on contour points shared between neighbouring boxes."""

    def __init__(self, func: ScaledFunction):
        self._func = func
        self._values: Dict[complex, ScaledComplex] = {}

    def __call__(self, z: complex) -> ScaledComplex:
        z = complex(z)
        if z not in self._values:
            self._values[z] = self._func(z)
        return self._values[z]

    @property
    def evaluations(self) -> int:
        return len(self._values)


def _phase_change(func: ScaledFunction, za: complex, zb: complex, ga: ScaledComplex, depth: int) -> float:
    gb = func(zb)
    if gb.mantissa == 0:
        raise ContourHit(f"Zero of the function on the contour at {zb}")

    delta = float(np.angle(gb.ratio(ga)))
    if abs(delta) <= MAX_PHASE_STEP:
        return delta
    if depth >= MAX_BISECTIONS:
        raise ContourHit(f"Phase of the function not resolved between {za} and {zb}")

    zm = 0.5 * (za + zb)
    gm = func(zm)
    if gm.mantissa == 0:
        raise ContourHit(f"Zero of the function on the contour at {zm}")
    return _phase_change(func, za, zm, ga, depth + 1) + _phase_change(func, zm, zb, gm, depth + 1)


def winding_number(func: ScaledFunction, vertices: Sequence[complex]) -> Tuple[int, float]:
    """
    The number of zeros enclosed by the closed polygon through `vertices`, counterclockwise.

    The phase of the function is followed along the polygon, bisecting every interval on which it changes by
    more than π/4.

    Returns:
        The winding number and the median of log|G| over the initial contour points.
    """
    points: List[complex] = []
    for start, end in zip(vertices, list(vertices[1:]) + [vertices[0]]):
        t = np.arange(INITIAL_POINTS_PER_EDGE) / INITIAL_POINTS_PER_EDGE
        points.extend(start + t * (end - start))

    values = [func(z) for z in points]
    if any(v.mantissa == 0 for v in values):
        raise ContourHit("Zero of the function on the contour")

    total = 0.0
    for i in range(len(points)):
        j = (i + 1) % len(points)
        total += _phase_change(func, points[i], points[j], values[i], 0)

    turns = total / (2.0 * np.pi)
    if abs(turns - round(turns)) > 0.1:
        raise ContourHit(f"Non-integer winding {turns:.3f}")

    return int(round(turns)), float(np.median([v.log_abs for v in values]))


def circle_vertices(center: complex, radius: float, n: int = 16) -> List[complex]:
    return list(center + radius * np.exp(2j * np.pi * np.arange(n) / n))


def locate_zeros(
    func: ScaledFunction, box: SearchBox, step_tol: float, max_depth: int = 6
) -> List[LocatedZero]:
    """
    All zeros of the holomorphic function `func` inside `box`, with multiplicities.

    Zeros are counted by the argument principle on the box boundary. Boxes with more than three zeros are
    subdivided; in the others Newton's method is started from the centre and the quarter centres until the
    zeros found account for the count.

    Args:
        func: The function, returning log-scaled values.
        box: The search box; its boundary must not pass through a zero.
        step_tol: The Newton step tolerance.
        max_depth: Maximal number of subdivisions.

    Returns:
        The zeros, sorted by real part.
    """
    cached = CachedFunction(func)
    try:
        count, log_scale = winding_number(cached, box.corners())
    except ContourHit as e:
        raise ZeroCountMismatch(f"The boundary of {box.label()} passes through or near a zero: {e}")

    zeros = _search(cached, box, count, log_scale, step_tol, 0, max_depth)
    logging.getLogger().info(
        f"Found {len(zeros)} distinct zeros in {box.label()} with {cached.evaluations} evaluations"
    )

    return sorted(zeros, key=lambda zero: (zero.z.real, zero.z.imag))


def _search(
    func: ScaledFunction,
    box: SearchBox,
    count: int,
    log_scale: float,
    step_tol: float,
    depth: int,
    max_depth: int,
) -> List[LocatedZero]:
    if count == 0:
        return []

    if count <= MAX_WINDING:
        found = _newton_in_box(func, box, count, log_scale, step_tol)
        if sum(zero.multiplicity for zero in found) == count:
            return found
        if depth > 0:
            warnings.warn(
                f"Newton accounted for {sum(z.multiplicity for z in found)} of {count} zeros in {box.label()}, "
                "subdividing",
                RuntimeWarning,
            )

    if depth >= max_depth:
        raise ZeroCountMismatch(f"Could not locate the {count} zeros counted in {box.label()}")

    logging.getLogger().info(f"Subdividing {box.label()} holding {count} zeros")
    for fraction in SPLIT_FRACTIONS:
        children = box.split(fraction)
        try:
            windings = [winding_number(func, child.corners()) for child in children]
        except ContourHit:
            continue
        if sum(n for n, _ in windings) != count:
            continue

        zeros: List[LocatedZero] = []
        for child, (n, scale) in zip(children, windings):
            zeros.extend(_search(func, child, n, scale, step_tol, depth + 1, max_depth))
        return zeros

    raise ZeroCountMismatch(f"Zero count of {box.label()} is not reproduced by any subdivision")


def _newton_in_box(
    func: ScaledFunction, box: SearchBox, count: int, log_scale: float, step_tol: float
) -> List[LocatedZero]:
    quarter = [child.center for child in box.split(0.5)]
    found: List[LocatedZero] = []
    for seed in [box.center] + quarter:
        try:
            result = newton(func, seed, step_tol, max_step=box.scale / 2.0)
        except ConvergenceFailure:
            continue

        z = result.z
        if not box.contains(z) or any(abs(z - other.z) <= 1e-6 * box.scale for other in found):
            continue

        radius = min([1e-3 * box.scale] + [0.5 * abs(z - other.z) for other in found])
        radius = min(radius, 0.5 * box.edge_distance(z)) if box.edge_distance(z) > 0 else radius
        try:
            multiplicity, _ = winding_number(func, circle_vertices(z, radius))
        except ContourHit:
            multiplicity = 1
        multiplicity = max(multiplicity, 1)

        residual = float(np.exp(result.value.log_abs - log_scale)) if result.value.mantissa != 0 else 0.0
        found.append(LocatedZero(z, multiplicity, box, residual))
        if sum(zero.multiplicity for zero in found) >= count:
            break

    return found
