import numpy as np
import pytest

from diracqnm.error.degenerate_horizons import DegenerateHorizons
from diracqnm.error.inadmissible_parameters import InadmissibleParameters
from diracqnm.error.outside_domain import OutsideDomain
from diracqnm.spacetime.background import Background
from diracqnm.spacetime.black_hole_params import BlackHoleParams, critical_masses
from diracqnm.spacetime.coefficients import coeff_functions
from diracqnm.spacetime.horizons import Side, horizon_roots, photon_sphere_radius
from diracqnm.spacetime.regge_wheeler import regge_wheeler
from diracqnm.tolerances import Tolerances


@pytest.mark.parametrize(
    "p",
    [
        BlackHoleParams(M=1.0, Q=0.3, a=0.0, Lambda=0.04),
        BlackHoleParams(M=1.0, Q=0.3, a=0.05, Lambda=0.04),
        BlackHoleParams(M=1.0, Q=0.0, a=0.1, Lambda=0.01),
    ],
)
def test_horizon_roots(p: BlackHoleParams) -> None:
    H = horizon_roots(p, Tolerances())

    assert H.r_n < 0 < H.r_c < H.r_minus < H.r_plus
    assert np.max(np.abs(p.delta_r(H.roots))) < 1e-10
    assert abs(np.sum(H.roots)) < 1e-12 * np.max(np.abs(H.roots))

    # Partial fractions of (r² + a²)/Δ_r have vanishing residue sum
    assert abs(np.sum(1.0 / H.kappas)) < 1e-9 * np.max(np.abs(1.0 / H.kappas))
    assert H.kappa(Side.PLUS) < 0 < H.kappa(Side.MINUS)


def test_delta_r_reconstructed_from_roots(rotating_params: BlackHoleParams) -> None:
    H = horizon_roots(rotating_params, Tolerances())
    r = np.linspace(H.r_minus, H.r_plus, 50)

    reconstructed = -rotating_params.Lambda / 3.0 * np.prod([r - rs for rs in H.roots], axis=0)
    scale = np.max(np.abs(rotating_params.delta_r(r)))

    assert np.max(np.abs(reconstructed - rotating_params.delta_r(r))) < 1e-10 * scale


def test_horizon_roots_rejects_inadmissible() -> None:
    with pytest.raises(InadmissibleParameters):
        horizon_roots(BlackHoleParams(M=2.0, Q=0.3, a=0.0, Lambda=0.04))


def test_near_extremal_is_degenerate() -> None:
    # Just inside the mass window, where r_- and r_+ nearly merge
    _, M_plus = critical_masses(BlackHoleParams(M=1.0, Q=0.0, a=0.0, Lambda=0.04))
    p = BlackHoleParams(M=M_plus * (1.0 - 1e-14), Q=0.0, a=0.0, Lambda=0.04)

    with pytest.raises(DegenerateHorizons):
        horizon_roots(p)


def test_horizon_frequencies(rotating_params: BlackHoleParams) -> None:
    p = rotating_params.with_changes(q=0.2)
    H = horizon_roots(p, Tolerances())

    for side in Side.all_values():
        r = H.root(side)
        assert H.omega(side, 1.5) == pytest.approx((p.a * p.E * 1.5 + p.q * p.Q * r) / (r**2 + p.a**2))


def test_regge_wheeler_anchor_and_inverse(rotating_params: BlackHoleParams) -> None:
    H = horizon_roots(rotating_params, Tolerances())
    rw_map = regge_wheeler(rotating_params, H)

    assert rw_map.x_of_r(photon_sphere_radius(rotating_params)) == pytest.approx(0.0, abs=1e-12)

    for x in [-2.0 * rw_map.X0, -1.0, 0.0, 3.5, 2.0 * rw_map.X0]:
        assert rw_map.x_of_r(rw_map.r_of_x(x)) == pytest.approx(x, rel=1e-9, abs=1e-9)

    xs = np.array([-1.0, 0.5])
    assert np.allclose(rw_map.r_of_x(xs), [rw_map.r_of_x(-1.0), rw_map.r_of_x(0.5)])


def test_regge_wheeler_is_increasing(rn_params: BlackHoleParams) -> None:
    H = horizon_roots(rn_params, Tolerances())
    rw_map = regge_wheeler(rn_params, H)
    r = np.linspace(H.r_minus + 0.1, H.r_plus - 0.1, 40)
    x = rw_map.x_of_r(r)

    assert np.all(np.diff(x) > 0)

    h = 1e-6
    finite_difference = (rw_map.x_of_r(r + h) - rw_map.x_of_r(r - h)) / (2 * h)
    assert np.allclose(finite_difference, rw_map.dx_dr(r), rtol=1e-6)


def test_horizon_window(rn_params: BlackHoleParams) -> None:
    H = horizon_roots(rn_params, Tolerances())
    rw_map = regge_wheeler(rn_params, H)
    delta = 0.05 * (H.r_plus - H.r_minus)

    assert H.r_plus - rw_map.r_of_x(rw_map.X0 + 0.1) < delta
    assert rw_map.r_of_x(-rw_map.X0 - 0.1) - H.r_minus < delta


@pytest.mark.parametrize("r", [0.0, 100.0])
def test_regge_wheeler_outside_domain(rn_params: BlackHoleParams, r: float) -> None:
    rw_map = regge_wheeler(rn_params, horizon_roots(rn_params, Tolerances()))

    with pytest.raises(OutsideDomain, match="outside the exterior region"):
        rw_map.x_of_r(r)


def test_regge_wheeler_rejects_foreign_horizons(rn_params: BlackHoleParams, rotating_params: BlackHoleParams) -> None:
    with pytest.raises(ValueError, match="different parameter set"):
        regge_wheeler(rn_params, horizon_roots(rotating_params, Tolerances()))


def test_coefficients_at_zero_rotation(rn_background: Background) -> None:
    p = rn_background.params
    coeffs = rn_background.coefficients
    r = np.linspace(rn_background.horizons.r_minus + 0.1, rn_background.horizons.r_plus - 0.1, 20)

    assert np.allclose(coeffs.a_of_r(r) ** 2, p.F(r) / r**2, rtol=1e-12)
    assert np.all(coeffs.b_of_r(r) == 0.0)
    assert np.all(coeffs.c_of_r(r, 0.5) == 0.0)


def test_coefficient_derivatives(rotating_background: Background) -> None:
    p = rotating_background.params.with_changes(q=0.3)
    H = horizon_roots(p, Tolerances())
    coeffs = coeff_functions(p, H)
    r = np.linspace(H.r_minus + 0.2, H.r_plus - 0.2, 15)
    h = 1e-6
    dx_dr = coeffs.rw_map.dx_dr(r)

    da = (coeffs.a_of_r(r + h) - coeffs.a_of_r(r - h)) / (2 * h) / dx_dr
    dc = (coeffs.c_of_r(r + h, 1.5) - coeffs.c_of_r(r - h, 1.5)) / (2 * h) / dx_dr

    assert np.allclose(coeffs.a_prime_of_r(r), da, rtol=1e-6, atol=1e-12)
    assert np.allclose(coeffs.c_prime_of_r(r, 1.5), dc, rtol=1e-6, atol=1e-12)


def test_coefficient_decay(rotating_background: Background) -> None:
    bg = rotating_background

    for side in Side.all_values():
        a_side = bg.horizons.a_asymptotic(side)
        kappa = bg.horizons.kappa(side)
        assert bg.coefficients.sampled_asymptotic(side) == pytest.approx(a_side, rel=1e-3)

        for offset in [0.5, 2.0, 6.0]:
            x = side.sign * (bg.X0 + offset)
            assert abs(bg.coefficients.a_of_x(x)) <= 2.0 * a_side * np.exp(kappa * x)


def test_horizon_chart_matches_coefficients(rotating_background: Background) -> None:
    bg = rotating_background

    for side in Side.all_values():
        chart = bg.chart(side)
        x = side.sign * (bg.X0 + 1.0 / abs(chart.kappa))
        w = chart.w_of_x(x)

        assert abs(w) < chart.radius
        assert np.polyval(chart.a_coeffs[::-1], w) == pytest.approx(bg.coefficients.a_of_x(x), rel=1e-9)
        assert np.polyval(chart.c_coeffs(1.5)[::-1], w) == pytest.approx(bg.coefficients.c_of_x(x, 1.5), rel=1e-9)
        # 𝔞 is odd in w
        assert np.max(np.abs(chart.a_coeffs[::2])) < 1e-10 * np.max(np.abs(chart.a_coeffs))
