"""Test the command-line interface."""

import csv
import io

import pytest

from seqnorm.commands import EXIT_CONFIG, EXIT_OK
from seqnorm.commands.main import create_parser, discover_commands, main


def _rows(text: str):
    return list(csv.DictReader(io.StringIO(text)))


def test_discover_commands():
    """Test that every subcommand module is found."""
    assert set(discover_commands()) == {
        "ak_table",
        "concavity",
        "dual_norm",
        "fundamental",
        "kfun",
        "mult_norm",
        "norm",
        "report_all",
        "spectra_check",
        "summing_estimate",
    }


def test_version(capsys):
    """Test the version flag."""
    with pytest.raises(SystemExit) as exc_info:
        create_parser().parse_args(["--version"])
    assert exc_info.value.code == 0
    assert "seqnorm" in capsys.readouterr().out


def test_norm_command(capsys):
    """Test the norm table on stdout."""
    assert main(["norm", "--space", "lp(2)", "--vec", "3,4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("space,n,value,tolerance,certification\n")
    assert _rows(out) == [
        {"space": "lp(2)", "n": "2", "value": "5", "tolerance": "", "certification": "exact"}
    ]


def test_invalid_descriptor_exits_with_config_error(capsys):
    """Test that bad expressions exit with status 2."""
    assert main(["norm", "--space", "lp(0.5)", "--vec", "1"]) == EXIT_CONFIG
    assert "seqnorm norm" in capsys.readouterr().err


def test_missing_space_exits_with_config_error():
    """Test that a space is required."""
    assert main(["norm", "--vec", "1"]) == EXIT_CONFIG


def test_dual_norm_command(capsys):
    """Test the dual of ℓ_{4/3} at (3, 4)."""
    assert main(["dual-norm", "--space", "lp(4/3)", "--vec", "3,4"]) == EXIT_OK
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["value"]) == pytest.approx(337.0 ** 0.25)
    assert row["method"] == "auto"


def test_mult_norm_command(capsys):
    """Test ‖(3, 4)‖ in M(ℓ_2, ℓ_1)."""
    assert main(["mult-norm", "--from", "lp(2)", "--to", "lp(1)", "--vec", "3,4"]) == EXIT_OK
    row = _rows(capsys.readouterr().out)[0]
    assert (row["from"], row["to"], row["lower"], row["upper"]) == ("lp(2)", "lp(1)", "5", "5")
    assert row["gap"] == "0"


def test_mult_norm_requires_both_spaces():
    """Test that --from and --to are both required."""
    assert main(["mult-norm", "--from", "lp(2)", "--vec", "1"]) == EXIT_CONFIG


def test_fundamental_writes_files(tmp_path):
    """Test that --out writes the CSV table."""
    out = tmp_path / "run"
    assert main(["fundamental", "--space", "lp(2)", "--n", "4,9", "--out", str(out)]) == EXIT_OK
    text = (out / "fundamental.csv").read_text(encoding="utf-8")
    assert [row["value"] for row in _rows(text)] == ["2", "3"]
    assert "\r" not in text


def test_kfun_command(capsys):
    """Test K(1.5, (4, 2, 1); ℓ_1, ℓ_∞)."""
    assert main(["kfun", "--couple", "lp(1),lp(inf)", "--vec", "4,2,1", "--t", "1.5,10"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert [float(row["value"]) for row in rows] == [5.0, 7.0]
    assert [row["split_sparsity"] for row in rows] == ["1", "3"]


def test_ak_table_command(tmp_path):
    """Test the approximation-number table and its summary."""
    out = tmp_path / "ak"
    assert main(["ak-table", "--space", "lp(1)", "--n", "4", "--k", "0.5,1", "--out", str(out)]) == EXIT_OK
    rows = _rows((out / "ak-table.csv").read_text(encoding="utf-8"))
    assert [row["k"] for row in rows] == ["2", "4"]
    assert float(rows[0]["upper"]) == pytest.approx(3 ** 0.5)
    assert rows[0]["certification"] == "reference"
    summary = (out / "summary.txt").read_text(encoding="utf-8")
    assert "[PASS]" in summary
    assert summary.rstrip().endswith("1/1 passed")


def test_ak_table_is_reproducible(tmp_path):
    """Test that reruns produce identical bytes."""
    first, second = tmp_path / "a", tmp_path / "b"
    for out in (first, second):
        main(["ak-table", "--space", "dwp(pow(1/2),3/2)", "--n", "8", "--out", str(out)])
    assert (first / "ak-table.csv").read_bytes() == (second / "ak-table.csv").read_bytes()


def test_concavity_command(capsys):
    """Test the 2-concavity estimate for ℓ_1."""
    assert main(["concavity", "--space", "lp(1)", "--n", "4", "--trials", "20"]) == EXIT_OK
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["upper"]) == 1.0
    assert 0 < float(row["lower"]) <= 1.0 + 1e-9


def test_spectra_check_with_matrix_file(tmp_path, capsys):
    """Test the Weyl checks on a matrix read from a file."""
    path = tmp_path / "shear.csv"
    path.write_text("2,2\n1,1\n0,1\n", encoding="utf-8")
    assert main(["spectra-check", "--matrix", str(path)]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert [row["check"] for row in rows] == ["product_1", "product_2", "norm_form"]
    assert all(row["passed"] == "true" for row in rows)


def test_spectra_check_malformed_matrix(tmp_path):
    """Test that a matrix file not matching its header is rejected."""
    path = tmp_path / "bad.csv"
    path.write_text("2,2\n1,1\n", encoding="utf-8")
    assert main(["spectra-check", "--matrix", str(path)]) == EXIT_CONFIG


def test_spectra_check_seeded(capsys):
    """Test seeded Gaussian matrices."""
    assert main(["spectra-check", "--n", "4", "--trials", "2", "--seed", "5"]) == EXIT_OK


def test_summing_estimate_command(capsys):
    """Test estimates for id: ℓ_1^4 → ℓ_2^4 measured in M(ℓ_2, ℓ_1) = ℓ_2."""
    argv = ["summing-estimate", "--space", "lp(2)", "--domain", "lp(1)", "--n", "4", "--families", "1"]
    assert main(argv) == EXIT_OK
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["lower"]) >= 1.0 - 1e-9
    assert float(row["upper"]) == pytest.approx(2 ** 0.5)


def test_config_file(tmp_path, capsys):
    """Test that an experiment file supplies the space."""
    path = tmp_path / "experiment.ini"
    path.write_text("[norm]\nspaces = lp(1)\n", encoding="utf-8")
    assert main(["norm", "--config", str(path), "--vec", "1,2"]) == EXIT_OK
    assert _rows(capsys.readouterr().out)[0]["value"] == "3"


def test_bad_config_file(tmp_path):
    """Test that an invalid experiment file exits with status 2."""
    path = tmp_path / "experiment.ini"
    path.write_text("[norm]\nseed = -1\n", encoding="utf-8")
    assert main(["norm", "--config", str(path), "--vec", "1"]) == EXIT_CONFIG


def test_mult_norm_search_method(capsys):
    """Test that --method search brackets M(ℓ_2, ℓ_{4/3}) = ℓ_4 and passes its check."""
    argv = ["mult-norm", "--from", "lp(2)", "--to", "lp(4/3)", "--vec", "2,1,0.5", "--method", "search"]
    assert main(argv) == EXIT_OK
    row = _rows(capsys.readouterr().out)[0]
    expected = (16.0 + 1.0 + 0.0625) ** 0.25
    assert float(row["upper"]) == pytest.approx(expected)
    assert float(row["lower"]) == pytest.approx(expected, rel=1e-6)
    assert float(row["gap"]) < 1e-6


def test_kfun_generic_method(capsys):
    """Test the generic splitting row for K(1.5, (4, 2, 1); ℓ_1, ℓ_∞)."""
    argv = ["kfun", "--couple", "lp(1),lp(inf)", "--vec", "4,2,1", "--t", "1.5", "--method", "generic"]
    assert main(argv) == EXIT_OK
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["value"]) == pytest.approx(5.0, rel=1e-6)
    assert row["certification"] == "numerical"
    assert float(row["value"]) - float(row["tolerance"]) <= 5.0 + 1e-9


@pytest.mark.slow
def test_report_all_is_byte_identical(tmp_path):
    """Test that two seeded quick runs write identical artifacts."""
    first, second = tmp_path / "first", tmp_path / "second"
    main(["report-all", "--quick", "--seed", "42", "--out", str(first)])
    main(["report-all", "--quick", "--seed", "42", "--out", str(second)])
    for name in ("report-all.csv", "summary.txt"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
