import importlib
from typing import Callable, Optional, Union

import numpy as np
import pytest
from pandas.testing import assert_frame_equal
from pytest_mock import MockerFixture

from diracqnm.angular.angular_mode import AngularMode
from diracqnm.error.convergence_failure import ConvergenceFailure
from diracqnm.qnm.qnm_record import QnmFailure, QnmRecord, SeedKind, SolveMethod
from diracqnm.qnm.solver import Seed, continue_in_rotation, qnm_solve, solve_auto
from diracqnm.qnm.spectrum_table import (
    TABLE_COLUMNS,
    SpectrumTable,
    deduplicate,
    leading_table,
    mode_grid,
    spectrum_table,
)
from diracqnm.radial.complex_newton import NewtonResult
from diracqnm.radial.log_spinor import ScaledComplex
from diracqnm.radial.radial_problem import RadialProblem
from diracqnm.radial.wronskian import WronskianValue
from diracqnm.semiclassical.leading import leading_qnm_for_mode
from diracqnm.semiclassical.photon_sphere import photon_sphere
from diracqnm.spacetime.background import Background
from diracqnm.spacetime.black_hole_params import BlackHoleParams
from diracqnm.tolerances import Tolerances


def make_record(mode: AngularMode, m: int, lam: complex, seed_kind: SeedKind = SeedKind.LEADING) -> QnmRecord:
    return QnmRecord(
        lam=complex(lam),
        mode=mode,
        m=m,
        mu=complex(mode.total_index),
        residual=1e-12,
        scaled_wronskian=1e-12,
        method=SolveMethod.WRONSKIAN,
        seed=complex(lam),
        seed_kind=seed_kind,
        iterations=3,
    )


def linear_wronskian(target: complex) -> Callable[[RadialProblem], WronskianValue]:
    def fake(prob: RadialProblem) -> WronskianValue:
        return WronskianValue(ScaledComplex(0j, prob.lam - target), ScaledComplex(0j, 1.0), 0.0, None, False)

    return fake


@pytest.fixture
def unit_free_wronskian(mocker: MockerFixture) -> None:
    mocker.patch("diracqnm.qnm.solver.free_wronskian_scale", return_value=ScaledComplex(0j, 1.0))


@pytest.mark.usefixtures("unit_free_wronskian")
def test_qnm_solve_from_leading_seed(
    mocker: MockerFixture, rn_params: BlackHoleParams, rn_background: Background
) -> None:
    mode = AngularMode(0.5, 5)
    leading = leading_qnm_for_mode(photon_sphere(rn_params), mode, 0)
    target = leading + 0.01 - 0.005j
    mocker.patch("diracqnm.qnm.solver.wronskian", side_effect=linear_wronskian(target))

    record = qnm_solve(rn_params, mode, 0, background=rn_background, tolerances=Tolerances())

    assert record.lam == pytest.approx(target, abs=1e-12)
    assert record.seed == leading
    assert record.method == SolveMethod.WRONSKIAN
    assert record.seed_kind == SeedKind.LEADING
    assert record.mu == 5.0
    assert record.scaled_wronskian < Tolerances().residual
    assert np.isfinite(record.residual)
    assert record.iterations >= 1


@pytest.mark.usefixtures("unit_free_wronskian")
def test_qnm_solve_from_user_seed(
    mocker: MockerFixture, rn_params: BlackHoleParams, rn_background: Background
) -> None:
    mocker.patch("diracqnm.qnm.solver.wronskian", side_effect=linear_wronskian(1.2 - 0.1j))

    record = qnm_solve(rn_params, AngularMode(1.5, 2), 1, 1.0 - 0.2j, background=rn_background)

    assert record.lam == pytest.approx(1.2 - 0.1j, abs=1e-12)
    assert record.seed == 1.0 - 0.2j
    assert record.method == SolveMethod.WRONSKIAN
    assert record.seed_kind == SeedKind.USER
    assert record.m == 1


def test_qnm_solve_rejects_upper_half_plane(
    mocker: MockerFixture, rn_params: BlackHoleParams, rn_background: Background
) -> None:
    mocker.patch("diracqnm.qnm.solver.wronskian", side_effect=linear_wronskian(0.8 + 0.3j))

    with pytest.raises(ConvergenceFailure, match="outside the lower half-plane"):
        qnm_solve(rn_params, AngularMode(0.5, 1), 0, 0.8 - 0.1j, background=rn_background)


def test_qnm_solve_without_convergence(
    mocker: MockerFixture, rn_params: BlackHoleParams, rn_background: Background
) -> None:
    def no_zero(prob: RadialProblem) -> WronskianValue:
        return WronskianValue(ScaledComplex(prob.lam, 1.0), ScaledComplex(0j, 1.0), 0.0, None, False)

    mocker.patch("diracqnm.qnm.solver.wronskian", side_effect=no_zero)

    with pytest.raises(ConvergenceFailure, match="did not converge"):
        qnm_solve(rn_params, AngularMode(0.5, 1), 0, 0.8 - 0.1j, background=rn_background)


def converged_at(lam: complex, wronskian_value: complex) -> NewtonResult:
    return NewtonResult(z=lam, value=ScaledComplex(0j, wronskian_value), iterations=3, trace=[1.0 - 0.2j, lam])


@pytest.mark.parametrize(
    "free_scale, accepted",
    [
        (ScaledComplex(0j, 1.0), True),
        (ScaledComplex(complex(np.log(1e-20)), 1.0), False),
    ],
)
def test_qnm_solve_accepts_on_scaled_wronskian(
    mocker: MockerFixture,
    rn_params: BlackHoleParams,
    rn_background: Background,
    free_scale: ScaledComplex,
    accepted: bool,
) -> None:
    mocker.patch("diracqnm.qnm.solver.wronskian", side_effect=linear_wronskian(1.2 - 0.1j))
    mocker.patch("diracqnm.qnm.solver.newton", return_value=converged_at(1.2 - 0.1j, 1e-12))
    mocker.patch("diracqnm.qnm.solver.free_wronskian_scale", return_value=free_scale)

    if accepted:
        record = qnm_solve(rn_params, AngularMode(1.5, 2), 0, 1.0 - 0.2j, background=rn_background)
        assert record.scaled_wronskian == pytest.approx(1e-12)
        assert record.residual < Tolerances().residual
    else:
        # A small step residual does not rescue a Wronskian far above the free scale
        with pytest.raises(ConvergenceFailure, match="Scaled Wronskian 1e\\+08 .* is not below the tolerance"):
            qnm_solve(rn_params, AngularMode(1.5, 2), 0, 1.0 - 0.2j, background=rn_background)


@pytest.mark.parametrize("exceptional", [True, False])
def test_qnm_solve_where_free_wronskian_vanishes(
    mocker: MockerFixture, rn_params: BlackHoleParams, rn_background: Background, exceptional: bool
) -> None:
    mocker.patch("diracqnm.qnm.solver.wronskian", side_effect=linear_wronskian(1.2 - 0.1j))
    mocker.patch("diracqnm.qnm.solver.newton", return_value=converged_at(1.2 - 0.1j, 1e-12))
    mocker.patch("diracqnm.qnm.solver.free_wronskian_scale", return_value=ScaledComplex(0j, 0.0))
    mocker.patch("diracqnm.qnm.solver.is_exceptional", return_value=exceptional)

    if exceptional:
        record = qnm_solve(rn_params, AngularMode(1.5, 2), 0, 1.0 - 0.2j, background=rn_background)
        assert np.isnan(record.scaled_wronskian)
        assert record.residual < Tolerances().residual
    else:
        with pytest.raises(ConvergenceFailure, match="is not a number"):
            qnm_solve(rn_params, AngularMode(1.5, 2), 0, 1.0 - 0.2j, background=rn_background)


@pytest.mark.parametrize(
    "seed, message",
    [
        (0.5 - 3.0j, "outside the strip"),
        ("leading", "complex number or 'auto'"),
    ],
)
def test_qnm_solve_rejects_seed(
    rn_params: BlackHoleParams, rn_background: Background, seed: Union[complex, str], message: str
) -> None:
    with pytest.raises(ValueError, match=message):
        qnm_solve(rn_params, AngularMode(0.5, 1), 0, seed, background=rn_background)


def test_auto_seed_needs_zero_rotation(rotating_params: BlackHoleParams, rotating_background: Background) -> None:
    with pytest.raises(ValueError, match="use continue_in_rotation"):
        qnm_solve(rotating_params, AngularMode(0.5, 1), 0, "auto", background=rotating_background)


def test_qnm_solve_rejects_arguments(rn_params: BlackHoleParams, rn_background: Background) -> None:
    with pytest.raises(ValueError, match="different parameter set"):
        qnm_solve(rn_params.with_changes(Q=0.2), AngularMode(0.5, 1), 0, background=rn_background)
    with pytest.raises(ValueError, match="overtone index must be nonnegative"):
        qnm_solve(rn_params, AngularMode(0.5, 1), -1, background=rn_background)


def fake_qnm_solve(
    p: BlackHoleParams,
    mode: AngularMode,
    m: int,
    seed: Seed = "auto",
    background: Optional[Background] = None,
    N: int = 64,
    tolerances: Optional[Tolerances] = None,
) -> QnmRecord:
    start = 1.0 - 0.1j if isinstance(seed, str) else complex(seed)
    return make_record(mode, m, start + 0.01 * p.a)


def test_continue_in_rotation(mocker: MockerFixture, rotating_params: BlackHoleParams) -> None:
    solve = mocker.patch("diracqnm.qnm.solver.qnm_solve", side_effect=fake_qnm_solve)

    record = continue_in_rotation(rotating_params, AngularMode(0.5, 1), 0)

    rotations = [call.args[0].a for call in solve.call_args_list]
    assert rotations == pytest.approx([0.0, 0.0125, 0.025, 0.0375, 0.05])
    assert solve.call_args_list[0].args[3] == "auto"
    assert solve.call_args_list[-1].args[0] == rotating_params
    assert record.method == SolveMethod.WRONSKIAN
    assert record.seed_kind == SeedKind.CONTINUATION
    assert record.seed == 1.0 - 0.1j
    assert record.lam == pytest.approx(1.0 - 0.1j + 0.01 * (0.0125 + 0.025 + 0.0375 + 0.05))


def test_continue_in_rotation_reports_failed_step(mocker: MockerFixture, rotating_params: BlackHoleParams) -> None:
    def failing(p: BlackHoleParams, mode: AngularMode, m: int, seed: Seed, **kwargs: object) -> QnmRecord:
        if p.a == 0.025:
            raise ConvergenceFailure("Newton did not converge", [1.0 - 0.1j])
        return fake_qnm_solve(p, mode, m, seed)

    mocker.patch("diracqnm.qnm.solver.qnm_solve", side_effect=failing)

    with pytest.raises(ConvergenceFailure, match="Continuation step 2/4 at a=0.025 failed"):
        continue_in_rotation(rotating_params, AngularMode(0.5, 1), 0)

    with pytest.raises(ValueError, match="at least 1"):
        continue_in_rotation(rotating_params, AngularMode(0.5, 1), 0, steps=0)


def test_solve_auto_policy(
    mocker: MockerFixture, rn_params: BlackHoleParams, rotating_params: BlackHoleParams
) -> None:
    solve = mocker.patch("diracqnm.qnm.solver.qnm_solve", side_effect=fake_qnm_solve)
    continuation = mocker.patch("diracqnm.qnm.solver.continue_in_rotation", side_effect=fake_qnm_solve)

    solve_auto(rn_params, AngularMode(0.5, 1), 0)
    assert solve.call_count == 1
    assert solve.call_args.args[3] == "auto"
    assert continuation.call_count == 0

    solve_auto(rotating_params, AngularMode(0.5, 1), 0)
    assert solve.call_count == 1
    assert continuation.call_count == 1


def test_qnm_record_serialization() -> None:
    record = make_record(AngularMode(-1.5, 2), 1, 1.25 - 0.125j, SeedKind.CONTINUATION)

    assert QnmRecord.from_record(record.to_record()) == record
    assert list(record.to_record()) == TABLE_COLUMNS
    assert record.to_record()["method"] == "wronskian"
    assert record.to_record()["seed_kind"] == "continuation"
    assert SolveMethod.all_values() == ["semiclassical", "wronskian"]
    assert SeedKind.all_values() == ["leading", "user", "continuation"]

    failure = QnmFailure(AngularMode(0.5, 1), 0, "ConvergenceFailure", "did not converge")
    expected = {"k": 0.5, "l": 1, "m": 0, "error": "ConvergenceFailure", "message": "did not converge"}
    assert failure.to_record() == expected


def test_mode_grid() -> None:
    grid = mode_grid([0.5, -0.5], [1], [0, 1])

    assert grid == [
        (AngularMode(0.5, 1), 0),
        (AngularMode(0.5, 1), 1),
        (AngularMode(-0.5, 1), 0),
        (AngularMode(-0.5, 1), 1),
    ]

    with pytest.raises(ValueError, match="The l-range of a spectrum table must not be empty"):
        mode_grid([0.5], [], [0])


def test_deduplicate() -> None:
    first = make_record(AngularMode(0.5, 1), 0, 1.0 - 0.1j)
    close = make_record(AngularMode(-0.5, 1), 0, 1.0 - 0.1j + 1e-10)
    distinct = make_record(AngularMode(1.5, 1), 0, 1.0 - 0.1j + 1e-6)

    kept, dropped = deduplicate([first, close, distinct])

    assert kept == [first, distinct]
    assert dropped == [(close, first)]


def fake_solve_auto(
    p: BlackHoleParams, mode: AngularMode, m: int, N: int = 64, tolerances: Optional[Tolerances] = None
) -> QnmRecord:
    if mode.l == 3:
        raise ConvergenceFailure("Newton did not converge", [1.0 - 0.1j])
    return make_record(mode, m, complex(abs(mode.k) + 0.1 * mode.l, -0.1 * (m + 1)))


def test_spectrum_table(mocker: MockerFixture, rn_params: BlackHoleParams) -> None:
    spectrum_table_module = importlib.import_module("diracqnm.qnm.spectrum_table")
    mocker.patch.object(spectrum_table_module, "solve_auto", side_effect=fake_solve_auto)

    table = spectrum_table(rn_params, [0.5, -0.5, 1.5], [1, 3], [0, 1], tolerances=Tolerances())

    assert [r.lam for r in table.records] == pytest.approx([0.6 - 0.1j, 0.6 - 0.2j, 1.6 - 0.1j, 1.6 - 0.2j])
    assert all(r.mode.k > 0 for r in table.records)
    assert [(dropped.mode.k, kept.mode.k) for dropped, kept in table.duplicates] == [(-0.5, 0.5), (-0.5, 0.5)]

    failures = table.failures_frame()
    assert len(failures) == 6
    assert set(failures["error"]) == {"ConvergenceFailure"}
    assert set(failures["l"]) == {3}

    frame = table.to_frame()
    assert list(frame.columns) == TABLE_COLUMNS
    assert len(frame) == 4

    parallel = spectrum_table(rn_params, [0.5, -0.5, 1.5], [1, 3], [0, 1], workers=3, tolerances=Tolerances())
    assert_frame_equal(frame, parallel.to_frame())
    assert_frame_equal(failures, parallel.failures_frame())


def test_spectrum_table_compares_with_leading_formula(rn_params: BlackHoleParams) -> None:
    mode = AngularMode(0.5, 5)
    leading = leading_qnm_for_mode(photon_sphere(rn_params), mode, 0)
    table = SpectrumTable([make_record(mode, 0, leading + 0.01)])

    frame = table.to_frame(compare_leading=True, params=rn_params)

    assert list(frame.columns) == TABLE_COLUMNS + ["leading_re", "leading_im", "leading_error"]
    assert frame["leading_error"][0] == pytest.approx(0.01)

    with pytest.raises(ValueError, match="needs the parameter set"):
        table.to_frame(compare_leading=True)


def test_leading_table(rn_params: BlackHoleParams, rotating_params: BlackHoleParams) -> None:
    table = leading_table(rn_params, [0.5], [6, 5], [0, 1])

    psd = photon_sphere(rn_params)
    assert [r.lam for r in table.records] == [
        leading_qnm_for_mode(psd, AngularMode(0.5, l), m) for l, m in [(5, 0), (5, 1), (6, 0), (6, 1)]
    ]
    assert {r.method for r in table.records} == {SolveMethod.SEMICLASSICAL}
    assert {r.seed_kind for r in table.records} == {SeedKind.LEADING}
    assert all(np.isnan(r.scaled_wronskian) and r.iterations == 0 for r in table.records)
    assert list(table.to_frame().columns) == TABLE_COLUMNS

    with pytest.raises(ValueError, match="holds for a = 0"):
        leading_table(rotating_params, [0.5], [5], [0])
