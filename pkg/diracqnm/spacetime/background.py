from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..tolerances import Tolerances
from .black_hole_params import BlackHoleParams
from .coefficients import CoefficientFunctions, coeff_functions
from .horizon_chart import HorizonChart, horizon_chart
from .horizons import HorizonSet, Side, horizon_roots
from .regge_wheeler import ReggeWheelerMap, regge_wheeler


@dataclass(frozen=True)
class Background:
    """Everything the radial solvers need about one parameter set, computed once."""

    params: BlackHoleParams
    horizons: HorizonSet
    rw_map: ReggeWheelerMap
    coefficients: CoefficientFunctions
    plus_chart: HorizonChart
    minus_chart: HorizonChart
    tolerances: Tolerances

    def chart(self, side: Side) -> HorizonChart:
        return self.plus_chart if side is Side.PLUS else self.minus_chart

    @property
    def X0(self) -> float:
        return self.rw_map.X0

    @staticmethod
    def build(p: BlackHoleParams, tolerances: Optional[Tolerances] = None) -> Background:
        tol = tolerances or Tolerances.from_env()
        H = horizon_roots(p, tol)
        rw_map = regge_wheeler(p, H)

        return Background(
            params=p,
            horizons=H,
            rw_map=rw_map,
            coefficients=coeff_functions(p, H, rw_map),
            plus_chart=horizon_chart(rw_map, Side.PLUS),
            minus_chart=horizon_chart(rw_map, Side.MINUS),
            tolerances=tol,
        )
