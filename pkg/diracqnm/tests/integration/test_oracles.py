import pytest

from diracqnm.qnm.checks import (
    horizons_table,
    random_params,
    real_axis_scan,
    sample_benchmark,
    series_oracle_table,
)
from diracqnm.semiclassical.photon_sphere import kerr_ds_check
from diracqnm.spacetime.black_hole_params import BlackHoleParams
from diracqnm.tolerances import Tolerances


@pytest.mark.experiments
def test_series_against_integration(rotating: BlackHoleParams, tolerances: Tolerances) -> None:
    frame = series_oracle_table(rotating, sample_benchmark(2024, 20), workers=2, tolerances=tolerances)

    assert len(frame) == 20
    assert max(frame["series_error_plus"]) < 1e-8
    assert max(frame["series_error_minus"]) < 1e-8
    assert max(frame["drift"]) < 1e-8


@pytest.mark.experiments
def test_no_real_resonances(rotating: BlackHoleParams, tolerances: Tolerances) -> None:
    lams = [0.25 * i for i in range(1, 13)]
    omegas = [0.5 * i for i in range(1, 11)]

    frame = real_axis_scan(rotating, [-1.5, 0.5, 1.5], lams, omegas, workers=2, tolerances=tolerances)

    assert all(frame["min_scaled_wronskian"] > 0)
    assert all(frame["points"] == len(lams) * len(omegas))


@pytest.mark.experiments
def test_horizons_of_random_parameters(tolerances: Tolerances) -> None:
    frame = horizons_table(random_params(2024, 50), tolerances)

    assert "error" not in frame.columns
    assert max(frame["root_residual"]) < 1e-10
    assert max(frame["inverse_kappa_sum"]) < 1e-9


@pytest.mark.experiments
def test_kerr_de_sitter_constants() -> None:
    for p in random_params(7, 10):
        discrepancies = kerr_ds_check(p)
        assert max(discrepancies.values()) < 1e-10
