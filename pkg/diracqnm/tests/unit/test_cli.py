import io
import json
import os
from pathlib import Path
from typing import Any, List

import pandas as pd
import pytest
from pytest_mock import MockerFixture

from diracqnm.angular.angular_mode import AngularMode
from diracqnm.cli import dispatch
from diracqnm.cli.arguments import parse_complex
from diracqnm.cli.output_writer import records_to_json
from diracqnm.qnm.qnm_record import QnmFailure, QnmRecord, SeedKind, SolveMethod
from diracqnm.qnm.spectrum_table import TABLE_COLUMNS, SpectrumTable
from diracqnm.semiclassical.leading import leading_qnm_for_mode
from diracqnm.semiclassical.photon_sphere import photon_sphere
from diracqnm.spacetime.black_hole_params import BlackHoleParams
from diracqnm.spacetime.horizons import horizon_roots
from diracqnm.version import __version__

RN_FLAGS = ["--M", "1", "--Q", "0.3", "--Lambda", "0.04", "--no-progress"]


def read_csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), float_precision="round_trip")


def make_record(k: float, l: int, lam: complex) -> QnmRecord:
    return QnmRecord(lam, AngularMode(k, l), 0, 1.0, 1e-12, 1e-12, SolveMethod.WRONSKIAN, lam, SeedKind.LEADING, 4)


def test_validate(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["validate"] + RN_FLAGS) == 0

    frame = read_csv(capsys.readouterr().out)
    assert bool(frame["admissible"][0])
    assert frame["M"][0] == 1.0


def test_validate_inadmissible(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["validate", "--M", "2", "--Q", "0.3", "--Lambda", "0.04"]) == 1

    captured = capsys.readouterr()
    assert "is not below M_crit^+" in captured.err
    assert not bool(read_csv(captured.out)["admissible"][0])


def test_horizons_csv(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["horizons", "--a", "0.05"] + RN_FLAGS) == 0

    frame = read_csv(capsys.readouterr().out)
    expected = horizon_roots(BlackHoleParams(M=1.0, Q=0.3, a=0.05, Lambda=0.04)).to_record()
    assert frame.iloc[0].to_dict() == expected


def test_horizons_json(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    output = tmp_path / "horizons.json"

    assert dispatch(["horizons", "--format", "json", "--output", str(output)] + RN_FLAGS) == 0

    assert capsys.readouterr().out == ""
    records = json.loads(output.read_text(encoding="utf-8"))
    assert records == [horizon_roots(BlackHoleParams(M=1.0, Q=0.3, a=0.0, Lambda=0.04)).to_record()]


def test_parameter_file_with_flag_override(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    params = tmp_path / "rn.params"
    params.write_text("M=1\nQ=0.3\nLambda=0.04\n", encoding="utf-8")

    assert dispatch(["validate", "--params", str(params), "--Q", "0.2"]) == 0

    assert read_csv(capsys.readouterr().out)["Q"][0] == 0.2


@pytest.mark.parametrize(
    "argv, message",
    [
        (["horizon"] + RN_FLAGS, "There is no subcommand 'horizon'. Did you mean 'horizons'?"),
        (["experiments", "zeman"] + RN_FLAGS, "There is no experiment 'zeman'. Did you mean 'zeeman'?"),
        (["horizons", "--format", "jsn"] + RN_FLAGS, "There is no output format 'jsn'. Did you mean 'json'?"),
        (["horizons", "--M", "1"], "Missing required parameters: Lambda"),
        (["horizons"], "No parameters given"),
        (["horizons", "--workers", "0"] + RN_FLAGS, "worker count must be at least 1"),
        (["horizons", "--tol-scale", "-1"] + RN_FLAGS, "Tolerance scale must be positive"),
    ],
)
def test_usage_errors(capsys: pytest.CaptureFixture[str], argv: List[str], message: str) -> None:
    assert dispatch(argv) == 2

    assert message in capsys.readouterr().err


def test_unknown_flag(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["horizons", "--Mass", "1"] + RN_FLAGS) == 2

    assert "unrecognized arguments: --Mass" in capsys.readouterr().err


def test_bad_parameter_file(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    params = tmp_path / "bad.params"
    params.write_text("M=1\nLamda=0.04\n", encoding="utf-8")

    assert dispatch(["horizons", "--params", str(params)]) == 2

    assert "Did you mean 'Lambda'?" in capsys.readouterr().err


def test_invalid_tolerance_override(capsys: pytest.CaptureFixture[str], mocker: MockerFixture) -> None:
    mocker.patch.dict(os.environ, {"QNM_TOL_OVERRIDE": "tight"})

    assert dispatch(["horizons"] + RN_FLAGS) == 2

    assert "QNM_TOL_OVERRIDE must be a positive number" in capsys.readouterr().err


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["--version"]) == 0

    assert capsys.readouterr().out.strip() == f"diracqnm {__version__}"


def test_qnm(capsys: pytest.CaptureFixture[str], mocker: MockerFixture) -> None:
    table = SpectrumTable([make_record(0.5, 5, 0.8 - 0.05j), make_record(0.5, 6, 0.95 - 0.05j)])
    solve = mocker.patch("diracqnm.cli.commands.spectrum_table", return_value=table)

    assert dispatch(["qnm", "--k", "0.5", "--l", "5,6", "--overtones", "0", "--compare-leading"] + RN_FLAGS) == 0

    assert solve.call_args.args[1:] == ([0.5], [5, 6], [0])
    frame = read_csv(capsys.readouterr().out)
    assert list(frame.columns) == TABLE_COLUMNS + ["leading_re", "leading_im", "leading_error"]
    assert list(frame["lambda_re"]) == [0.8, 0.95]


def test_qnm_semiclassical(capsys: pytest.CaptureFixture[str], mocker: MockerFixture) -> None:
    solve = mocker.patch("diracqnm.cli.commands.spectrum_table")

    assert dispatch(["qnm", "--k", "0.5", "--l", "5,6", "--method", "semiclassical"] + RN_FLAGS) == 0

    solve.assert_not_called()
    frame = read_csv(capsys.readouterr().out)
    psd = photon_sphere(BlackHoleParams(M=1.0, Q=0.3, a=0.0, Lambda=0.04))
    expected = [leading_qnm_for_mode(psd, AngularMode(0.5, l), 0) for l in (5, 6)]
    assert list(frame.columns) == TABLE_COLUMNS
    assert list(frame["method"]) == ["semiclassical"] * 2
    assert list(frame["seed_kind"]) == ["leading"] * 2
    assert list(frame["iterations"]) == [0, 0]
    assert frame["scaled_wronskian"].isna().all()
    assert list(frame["lambda_re"]) == pytest.approx([z.real for z in expected], rel=1e-15)


def test_qnm_semiclassical_takes_no_seed(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["qnm", "--seed", "1-0.1j", "--method", "semiclassical"] + RN_FLAGS) == 1

    assert "Semiclassical predictions take no seeds" in capsys.readouterr().err


def test_qnm_rejects_unknown_method(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["qnm", "--method", "shooting"] + RN_FLAGS) == 2


def test_qnm_failures(capsys: pytest.CaptureFixture[str], mocker: MockerFixture) -> None:
    failure = QnmFailure(AngularMode(0.5, 1), 0, "ConvergenceFailure", "Newton did not converge")
    table = SpectrumTable([make_record(0.5, 5, 0.8 - 0.05j)], [failure])
    mocker.patch("diracqnm.cli.commands.spectrum_table", return_value=table)

    assert dispatch(["qnm"] + RN_FLAGS) == 1

    captured = capsys.readouterr()
    assert "k=0.5, l=1, m=0: ConvergenceFailure: Newton did not converge" in captured.err
    assert len(read_csv(captured.out)) == 1


def test_qnm_from_earlier_output(capsys: pytest.CaptureFixture[str], mocker: MockerFixture, tmp_path: Path) -> None:
    earlier = [make_record(0.5, 5, 0.8 - 0.05j), make_record(-1.5, 2, 0.6 - 0.07j)]
    seeds = tmp_path / "seeds.json"
    seeds.write_text(records_to_json([r.to_record() for r in earlier]), encoding="utf-8")

    def reconverge(p: BlackHoleParams, mode: AngularMode, m: int, seed: complex, **kwargs: Any) -> QnmRecord:
        return make_record(mode.k, mode.l, seed)

    solve = mocker.patch("diracqnm.cli.commands.qnm_solve", side_effect=reconverge)

    assert dispatch(["qnm", "--seeds", str(seeds), "--format", "json"] + RN_FLAGS) == 0

    assert [call.args[3] for call in solve.call_args_list] == [0.8 - 0.05j, 0.6 - 0.07j]
    records = [QnmRecord.from_record(r) for r in json.loads(capsys.readouterr().out)]
    assert [(r.mode, r.lam) for r in records] == [(r.mode, r.lam) for r in earlier]


def test_qnm_seed_file_must_hold_records(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    seeds = tmp_path / "seeds.json"
    seeds.write_text('{"lambda_re": 1.0}', encoding="utf-8")

    assert dispatch(["qnm", "--seeds", str(seeds)] + RN_FLAGS) == 1

    assert "must hold a JSON array of QNM records" in capsys.readouterr().err


def test_radial_zeros_rejects_tiles(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["radial-zeros", "--k", "0.5", "--box", "1,2,-1,0", "--fix-lambda", "1.5", "--tiles", "1,2,3"]

    assert dispatch(argv + RN_FLAGS) == 2

    assert "Expected two comma-separated integers" in capsys.readouterr().err


def test_asymptotics(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["asymptotics", "--a", "0.02", "--k-tilde", "8"] + RN_FLAGS) == 0

    frame = read_csv(capsys.readouterr().out)
    assert frame["kerr_ds_check"][0] < 1e-12
    assert bool(frame["in_window"][0])
    assert frame["zeeman_slope_minus"][0] < frame["zeeman_slope_plus"][0]


def test_parse_complex() -> None:
    assert parse_complex("1.5-0.1i") == 1.5 - 0.1j
    assert parse_complex(" 2 ") == 2.0

    with pytest.raises(ValueError):
        parse_complex("one")
