from typing import Callable, Sequence

import numpy as np
import pytest
from pytest_mock import MockerFixture

from diracqnm.error.convergence_failure import ConvergenceFailure, ZeroCountMismatch
from diracqnm.error.outside_domain import OutsideDomain
from diracqnm.error.series_errors import GammaPole
from diracqnm.radial.argument_principle import SearchBox, circle_vertices, locate_zeros, winding_number
from diracqnm.radial.complex_newton import log_derivative, newton
from diracqnm.radial.horizon_series import evaluate_outgoing, horizon_series
from diracqnm.radial.integration import integrate_interior
from diracqnm.radial.log_spinor import LogSpinor, ScaledComplex, determinant
from diracqnm.radial.radial_problem import RadialProblem, conjugate_solution
from diracqnm.radial.resonances import is_exceptional, radial_resonances
from diracqnm.radial.schrodinger import schrodinger_reduction_check
from diracqnm.radial.wronskian import WronskianValue, free_wronskian_scale, wronskian
from diracqnm.spacetime.background import Background
from diracqnm.spacetime.horizons import Side


def polynomial(zeros: Sequence[complex]) -> Callable[[complex], ScaledComplex]:
    def func(z: complex) -> ScaledComplex:
        return ScaledComplex(0j, complex(np.prod([z - zero for zero in zeros])))

    return func


def conjugate(value: ScaledComplex) -> ScaledComplex:
    return ScaledComplex(np.conj(value.log_scale), np.conj(value.mantissa))


def test_scaled_complex() -> None:
    big = ScaledComplex(800.0 + 1j, 2.0)
    small = ScaledComplex(-800.0, 0.5j)

    assert big.log_abs == pytest.approx(800.0 + np.log(2.0))
    assert big.ratio(ScaledComplex(799.0 + 1j, 1.0)) == pytest.approx(2.0 * np.e)
    assert (big * small).value == pytest.approx(np.exp(1j) * 1.0j)
    assert ScaledComplex(0j, 0j).log_abs == float("-inf")


def test_log_spinor() -> None:
    f = LogSpinor.from_vector(np.array([3.0, 4.0j]), 10.0)

    assert np.linalg.norm(f.vector) == pytest.approx(1.0)
    assert f.log_scale == pytest.approx(10.0 + np.log(5.0))
    assert np.allclose(f.value(), np.exp(10.0) * np.array([3.0, 4.0j]))
    assert LogSpinor.from_vector(np.zeros(2)).is_zero

    g = LogSpinor.from_vector(np.array([1.0, 1.0]))
    det = determinant([f, g])
    assert det.value == pytest.approx(np.exp(10.0) * (3.0 - 4.0j))


def test_conjugate_solution() -> None:
    assert np.allclose(conjugate_solution(np.array([1.0 + 2.0j, 3.0])), [3.0, 1.0 - 2.0j])

    with pytest.raises(ValueError, match="two-component"):
        conjugate_solution(np.ones(4))


def test_conjugate_solution_solves_real_system(rotating_background: Background) -> None:
    prob = RadialProblem(rotating_background, 1.3, 2.0, 1.5)
    f = LogSpinor.from_vector(np.array([1.0 + 0.5j, -0.3j]))
    g = LogSpinor.from_vector(conjugate_solution(f.vector))

    f_end = integrate_interior(prob, f, -1.0, 2.0)
    g_end = integrate_interior(prob, g, -1.0, 2.0)

    assert np.allclose(g_end.value(), conjugate_solution(f_end.value()), rtol=1e-9, atol=1e-12)


def test_gamma_pole(rn_background: Background) -> None:
    kappa = rn_background.horizons.kappa(Side.PLUS)
    lam = 0.5j * kappa
    prob = RadialProblem(rn_background, lam, 1.0, 0.5)

    with pytest.raises(GammaPole, match="side PLUS"):
        horizon_series(prob, Side.PLUS)

    limit = horizon_series(prob, Side.PLUS, limit_mode=True)
    assert limit.exceptional
    assert limit.leading_order == 1
    assert not np.any(limit.coefficients[:, 0])
    assert not limit.is_zero

    assert free_wronskian_scale(prob).mantissa == 0
    assert is_exceptional(rn_background, lam, 0.5)
    assert not is_exceptional(rn_background, lam + 0.1, 0.5)


def test_series_near_gamma_pole(rn_background: Background) -> None:
    kappa = rn_background.horizons.kappa(Side.PLUS)
    prob = RadialProblem(rn_background, 0.5j * kappa + 1e-3, 1.0, 0.5)

    series = horizon_series(prob, Side.PLUS)

    assert not series.exceptional
    assert np.isfinite(series.log_norm)
    assert np.all(np.isfinite(series.coefficients))
    assert series.tail_estimate <= rn_background.tolerances.series_tail


def test_series_rejects_invalid_seed(rn_background: Background) -> None:
    with pytest.raises(ValueError, match="Seed index 1 out of range"):
        horizon_series(RadialProblem(rn_background, 1.0, 1.0, 0.5), Side.MINUS, seed=1)


def test_series_outside_validated_disc(rn_background: Background) -> None:
    series = horizon_series(RadialProblem(rn_background, 1.0 - 0.2j, 1.0, 0.5), Side.PLUS)

    with pytest.raises(OutsideDomain, match="validated disc"):
        evaluate_outgoing(series, 0.0)


@pytest.mark.parametrize("side", Side.all_values())
def test_series_matches_integration(rotating_background: Background, side: Side) -> None:
    bg = rotating_background
    prob = RadialProblem(bg, 1.2 - 0.3j, 2.0, 0.5)
    series = horizon_series(prob, side)

    x_near = side.sign * (bg.X0 + 1.0)
    x_deep = side.sign * (bg.X0 + 3.0)
    integrated = integrate_interior(prob, evaluate_outgoing(series, x_deep), x_deep, x_near)
    direct = evaluate_outgoing(series, x_near)

    difference = np.exp(integrated.log_scale - direct.log_scale) * integrated.vector - direct.vector
    assert np.linalg.norm(difference) < 1e-8


def test_wronskian_drift(rotating_background: Background) -> None:
    W = wronskian(RadialProblem(rotating_background, 1.5 - 0.2j, 2.5, -1.5), with_drift=True)

    assert not W.degenerate
    assert W.drift is not None
    assert W.drift < 1e-8
    assert W.residual > 0


def test_wronskian_conjugation_symmetry(rotating_background: Background) -> None:
    W = wronskian(RadialProblem(rotating_background, 1.1 - 0.4j, 1.7 + 0.2j, 1.5)).value
    mirrored = wronskian(RadialProblem(rotating_background, -1.1 - 0.4j, -1.7 + 0.2j, -1.5)).value

    assert abs(mirrored.ratio(conjugate(W)) - 1.0) < 1e-8


def test_wronskian_is_holomorphic(rotating_background: Background) -> None:
    lam, omega, delta = 1.4 - 0.3j, 2.0, 1e-4

    def W(z: complex) -> ScaledComplex:
        return wronskian(RadialProblem(rotating_background, z, omega, 0.5)).value

    center = W(lam)
    d_real = (W(lam + delta).ratio(center) - W(lam - delta).ratio(center)) / (2 * delta)
    d_imag = (W(lam + 1j * delta).ratio(center) - W(lam - 1j * delta).ratio(center)) / (2j * delta)

    assert abs(d_real - d_imag) < 1e-4 * max(1.0, abs(d_real))


def test_full_system_factorizes(massive_background: Background) -> None:
    lam, omega, k = 1.3 - 0.25j, 2.2, 0.5
    block = RadialProblem(massive_background, lam, omega, k)

    W4 = wronskian(RadialProblem(massive_background, lam, omega, k, full_system=True)).value
    product = wronskian(block).value * wronskian(block.partner()).value

    assert abs(W4.ratio(product) - 1.0) < 1e-7


def test_full_system_has_no_partner(massive_background: Background) -> None:
    with pytest.raises(ValueError, match="no partner block"):
        RadialProblem(massive_background, 1.0, 1.0, 0.5, full_system=True).partner()


def test_schrodinger_reduction(rotating_background: Background) -> None:
    lam = 1.3
    prob = RadialProblem(rotating_background, lam, 2.0, 1.5)
    check = schrodinger_reduction_check(prob, n_points=2048, n_spinors=5)

    assert check.residual < 1e-7
    for side in Side.all_values():
        expected = -((prob.Omega(side) - lam) ** 2)
        name = side.name.lower()
        assert check.potential_limits[f"W_plus_{name}"] == pytest.approx(expected, rel=1e-6)
        assert check.potential_limits[f"W_minus_{name}"] == pytest.approx(expected, rel=1e-6)


def test_schrodinger_reduction_needs_massless_block(massive_background: Background) -> None:
    with pytest.raises(ValueError, match="two-component massless system"):
        schrodinger_reduction_check(RadialProblem(massive_background, 1.0, 1.0, 0.5))


def test_log_derivative_of_polynomial() -> None:
    func = polynomial([1.0, -2.0 + 1.0j, 0.5j])
    z = 0.3 + 0.2j

    expected = sum(1.0 / (z - zero) for zero in [1.0, -2.0 + 1.0j, 0.5j])
    assert log_derivative(func, z) == pytest.approx(expected, rel=1e-10)


def test_newton() -> None:
    result = newton(polynomial([1.0 - 0.5j, 3.0]), 0.8 - 0.3j, 1e-12)

    assert result.z == pytest.approx(1.0 - 0.5j, abs=1e-12)
    assert result.trace[0] == 0.8 - 0.3j
    assert result.iterations >= 1


def test_newton_convergence_failure() -> None:
    def no_zero(z: complex) -> ScaledComplex:
        return ScaledComplex(z, 1.0)

    with pytest.raises(ConvergenceFailure, match="did not converge") as e:
        newton(no_zero, 0.0, 1e-12, max_iter=10)

    assert len(e.value.trace) == 11


def test_winding_number() -> None:
    count, _ = winding_number(polynomial([0.1, -0.2j]), circle_vertices(0.0, 1.0))
    assert count == 2

    count, _ = winding_number(polynomial([3.0]), circle_vertices(0.0, 1.0))
    assert count == 0


def test_locate_zeros() -> None:
    zeros = [1.2 + 0.4j, -0.2 - 0.4j, 1.3 - 0.6j]
    box = SearchBox(-1.0, 2.0, -1.0, 1.0)

    found = locate_zeros(polynomial(zeros), box, 1e-12)

    assert [z.multiplicity for z in found] == [1, 1, 1]
    assert [z.z for z in found] == pytest.approx(sorted(zeros, key=lambda z: z.real), abs=1e-10)
    assert all(z.residual < 1e-8 for z in found)


def test_locate_double_zero() -> None:
    found = locate_zeros(polynomial([0.3, 0.3, -0.5]), SearchBox(-1.0, 1.0, -1.0, 1.0), 1e-8)

    assert [z.multiplicity for z in found] == [1, 2]
    assert found[0].z == pytest.approx(-0.5, abs=1e-10)
    assert found[1].z == pytest.approx(0.3, abs=1e-6)


def test_locate_zeros_subdivides_crowded_box() -> None:
    box = SearchBox(-2.0, 2.0, -2.0, 2.0)
    zeros = [child.center for child in box.split()]

    found = locate_zeros(polynomial(zeros), box, 1e-12)

    assert sum(z.multiplicity for z in found) == 4
    assert sorted((z.z.real, z.z.imag) for z in found) == pytest.approx(
        sorted((z.real, z.imag) for z in zeros), abs=1e-10
    )
    assert all(z.box != box for z in found)


def test_zero_on_boundary() -> None:
    with pytest.raises(ZeroCountMismatch, match="passes through or near a zero"):
        locate_zeros(polynomial([1.0]), SearchBox(1.0, 2.0, -1.0, 1.0), 1e-12)


def test_search_box() -> None:
    box = SearchBox.parse("0, 2, -1, 0")

    assert box == SearchBox(0.0, 2.0, -1.0, 0.0)
    assert box.center == 1.0 - 0.5j
    assert box.tiles(2, 1) == [SearchBox(0.0, 1.0, -1.0, 0.0), SearchBox(1.0, 2.0, -1.0, 0.0)]

    with pytest.raises(ValueError, match="four comma-separated numbers"):
        SearchBox.parse("0,1,2")
    with pytest.raises(ValueError, match="Empty search box"):
        SearchBox(1.0, 0.0, 0.0, 1.0)


def test_radial_resonances(mocker: MockerFixture, rotating_background: Background) -> None:
    zeros = [1.5 - 0.2j, 2.5 - 0.3j]

    def fake_wronskian(prob: RadialProblem) -> WronskianValue:
        value = complex(np.prod([prob.omega - zero for zero in zeros]))
        return WronskianValue(ScaledComplex(0j, value), ScaledComplex(0j, 1.0), 0.0, None, False)

    mocker.patch("diracqnm.radial.resonances.wronskian", side_effect=fake_wronskian)
    box = SearchBox(1.0, 3.0, -0.6, 0.1)

    found = radial_resonances(rotating_background, 0.5, box, lam=1.0 - 0.1j, tiles=(2, 1))
    assert [z.omega for z in found] == pytest.approx(zeros, abs=1e-10)
    assert all(z.lam == 1.0 - 0.1j and z.k == 0.5 and not z.degenerate for z in found)
    assert found[0].winding_box == box.tiles(2, 1)[0].label()
    assert found[0].to_record()["omega_re"] == found[0].omega.real

    parallel = radial_resonances(rotating_background, 0.5, box, lam=1.0 - 0.1j, tiles=(2, 1), workers=2)
    assert parallel == found


def test_radial_resonances_needs_one_fixed_variable(rotating_background: Background) -> None:
    box = SearchBox(1.0, 3.0, -0.6, 0.1)

    with pytest.raises(ValueError, match="Exactly one of lambda and omega"):
        radial_resonances(rotating_background, 0.5, box)
    with pytest.raises(ValueError, match="Exactly one of lambda and omega"):
        radial_resonances(rotating_background, 0.5, box, lam=1.0, omega=1.0)
