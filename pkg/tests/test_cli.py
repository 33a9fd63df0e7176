"""Command-line surface: tables, exit codes, config precedence, round-trips."""

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from relosc import cli, model, specfun
from relosc.model import OscillatorConfig, QuantumNumbers


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_range():
    assert cli.parse_range("0..3") == (0, 1, 2, 3)
    assert cli.parse_range("-2..-1") == (-2, -1)
    assert cli.parse_range("4") == (4,)
    with pytest.raises(Exception):
        cli.parse_range("3..1")


def test_spectrum_closed_form(capsys):
    code, out, _ = run(["spectrum", "--dimensionless", "--omega0", "1", "--b", "0",
                        "--n", "0..0", "--m", "0..0"], capsys)
    assert code == 0
    (row,) = table(out)
    assert float(row["E_over_hbar_omega"]) == pytest.approx(1 + math.sqrt(2), abs=1e-12)


def test_spectrum_nr_energies(capsys):
    code, out, _ = run(["spectrum", "--omega0", "0.001", "--n", "0..2", "--m", "0"], capsys)
    vals = [float(r["E_minus_mc2_over_hbar_omega"]) for r in table(out)]
    assert vals == pytest.approx([1, 3, 5], abs=1e-2)


def test_spectrum_invalid_cell_row(capsys):
    code, out, _ = run(["spectrum", "--omega0", "1", "--b", "0", "--n", "0", "--m", "1"], capsys)
    (row,) = table(out)
    assert code == 0
    assert "radicand" in row["error"] and row["alpha"] == ""


def test_csv_round_trip_is_bit_identical(capsys):
    _, out, _ = run(["spectrum", "--omega0", "0.2", "--b", "1", "--n", "0..3", "--m", "1"],
                    capsys)
    cfg = OscillatorConfig.dimensionless(0.2, 1.0)
    for row in table(out):
        qn = QuantumNumbers(int(row["n"]), int(row["m"]))
        sc = model.spectral_constants(cfg, qn)
        assert float(row["alpha"]) == sc.alpha
        assert float(row["nu"]) == sc.nu


def test_wavefunction_columns_and_normalization(capsys):
    code, out, _ = run(["wavefunction", "--omega0", "0.2", "--b", "1", "--n", "1", "--m", "2"],
                       capsys)
    rows = table(out)
    assert code == 0
    assert list(rows[0]) == ["rho", "re_R", "im_R", "abs_R", "S_n", "w"]
    assert float(rows[0]["rho"]) == pytest.approx(1e-6)
    assert float(rows[0]["abs_R"]) < 1e-3
    rho = [float(r["rho"]) for r in rows]
    dens = [float(r["abs_R"]) ** 2 for r in rows]
    trap = sum((rho[k + 1] - rho[k]) * (dens[k] + dens[k + 1]) / 2 for k in range(len(rho) - 1))
    assert trap == pytest.approx(1.0, abs=1e-3)
    # values reproduce bit-identically from the model
    f = model.radial_eigenfunction(OscillatorConfig.dimensionless(0.2, 1.0), QuantumNumbers(1, 2))
    r = rows[10]
    assert float(r["abs_R"]) == abs(model.radial_eval(f, float(r["rho"])))
    assert float(r["w"]) == specfun.weight_function(float(r["rho"]))


def test_wavefunction_ground_state_modulus(capsys):
    _, out, _ = run(["wavefunction", "--omega0", "0.2", "--n", "0", "--m", "0",
                     "--rho-count", "7", "--rho-max", "6"], capsys)
    f = model.radial_eigenfunction(OscillatorConfig.dimensionless(0.2), QuantumNumbers(0, 0))
    for row in table(out):
        assert float(row["S_n"]) == 1.0
        assert float(row["abs_R"]) == pytest.approx(model.radial_modulus(f, float(row["rho"])),
                                                     rel=1e-13)


def test_wavefunction_full_grid(capsys):
    code, out, _ = run(["wavefunction", "--full", "--rho-count", "3", "--phi-count", "4",
                        "--n", "0", "--m", "1", "--b", "1"], capsys)
    rows = table(out)
    assert code == 0 and len(rows) == 12
    assert set(rows[0]) == {"r", "phi", "re_psi", "im_psi", "abs_psi"}


def test_wavefunction_needs_single_state(capsys):
    code, _, err = run(["wavefunction", "--n", "0..2"], capsys)
    assert code == 2 and "single" in err


def test_physical_mode_requires_all_four(capsys):
    code, _, err = run(["spectrum", "--mass", "1", "--omega", "1"], capsys)
    assert code == 2 and "--c" in err
    code, _, _ = run(["spectrum", "--mass", "1", "--omega", "1", "--c", "1", "--hbar", "1",
                      "--omega0", "0.3"], capsys)
    assert code == 2
    code, out, _ = run(["spectrum", "--mass", "1", "--omega", "0.2", "--c", "1", "--hbar", "1",
                        "--n", "0", "--m", "0"], capsys)
    assert code == 0 and table(out)


def test_usage_errors_exit_2(capsys):
    assert run(["bogus"], capsys)[0] == 2
    assert run(["spectrum", "--n", "x"], capsys)[0] == 2
    assert run(["verify", "--suite", "nope"], capsys)[0] == 2


def test_config_file_and_flag_precedence(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# oscillator\nomega0 = 1\nb = 0\nn = 0..1\nm = 0\n")
    _, out, _ = run(["spectrum", "--config", str(conf)], capsys)
    rows = table(out)
    assert len(rows) == 2
    assert float(rows[0]["E_over_hbar_omega"]) == pytest.approx(1 + math.sqrt(2))
    _, out, _ = run(["spectrum", "--config", str(conf), "--omega0", "0.5"], capsys)
    assert float(table(out)[0]["E_over_mc2"]) != pytest.approx(1 + math.sqrt(2))


def test_config_file_unknown_key(tmp_path, capsys):
    conf = tmp_path / "bad.conf"
    conf.write_text("colour = blue\n")
    code, _, err = run(["spectrum", "--config", str(conf)], capsys)
    assert code == 2 and "colour" in err


def test_verify_suite_filter_and_output_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(["verify", "--suite", "algebra", "--output", str(path)], capsys)
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert data["summary"]["total"] == data["summary"]["passed"] > 0
    assert all(c["name"].startswith("algebra") for c in data["checks"])


def test_verify_impossible_tolerance_exits_1(capsys):
    code, out, _ = run(["verify", "--suite", "specfun", "--tolerance", "1e-15"], capsys)
    data = json.loads(out)
    assert code == 1
    assert any(not c["pass"] and c["max_residual"] > 1e-15 for c in data["checks"])


def test_verify_csv_format(capsys):
    code, out, _ = run(["verify", "--suite", "specfun", "--format", "csv"], capsys)
    rows = table(out)
    assert code == 0 and rows and set(rows[0]) == {"name", "max_residual", "tolerance", "pass"}


def test_limits_table(capsys):
    code, out, _ = run(["limits", "--n", "0", "--m", "1"], capsys)
    rows = table(out)
    assert code == 0
    alpha = [r for r in rows if r["quantity"] == "alpha"]
    assert [float(r["target"]) for r in alpha] == [1.5] * 3
    h0 = [r for r in rows if r["quantity"] == "H0-mc2[m=0]" and r["ratio"]]
    assert all(3 <= float(r["ratio"]) <= 5 for r in h0)


def test_algebra_table_json(capsys):
    code, out, _ = run(["algebra", "--format", "json"], capsys)
    data = json.loads(out)
    rows = {r["identity"]: r for r in data["rows"]}
    assert code == 0
    assert rows["[m_x, m_y] = -i L"]["verdict"] == "match"
    assert rows["[m_y, n_y] = i n_y^2"]["verdict"] == "mismatch"


def test_repeated_runs_are_byte_identical(capsys):
    outs = [run(["limits", "--n", "0", "--m", "0"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relosc", "spectrum", "--n", "0", "--m", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("n,m,alpha")
