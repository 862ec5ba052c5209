import subprocess
import sys

import numpy as np
import pytest

from pdc_entanglement.cli import RunConfig, main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = text.strip().split("\n")
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return header, rows


def test_default_config_consistency():
    cfg = RunConfig()
    assert cfg.derived_omega1_bar == pytest.approx(cfg.omega1_bar, rel=1e-9)


class TestFig1:
    def test_format_and_anchors(self, capsys, tmp_path):
        out = tmp_path / "fig1.csv"
        code, _, _ = run_cli(
            ["fig1", "--temp-grid", "0:300:4", "--out", str(out)], capsys
        )
        assert code == 0
        header, rows = parse_csv(out.read_text())
        assert header == ["temperature_K", "y", "tau_e"]
        assert len(rows) == 4 * 3
        by_point = {(r[0], r[1]): r[2] for r in rows}
        assert by_point[(0.0, 0.5)] == 0.0
        assert by_point[(300.0, 0.0)] == pytest.approx(2.7938815487, abs=1e-6)

    def test_monotone_along_temperature(self, capsys, tmp_path):
        out = tmp_path / "fig1.csv"
        run_cli(["fig1", "--out", str(out)], capsys)
        _, rows = parse_csv(out.read_text())
        for y in (0.0, 0.5, 0.9):
            curve = [r[2] for r in rows if r[1] == y]
            assert all(b >= a for a, b in zip(curve, curve[1:]))

    def test_bad_grid_is_usage_error(self, capsys):
        code, _, err = run_cli(["fig1", "--temp-grid", "0:300:0"], capsys)
        assert code == 2
        assert "error" in err


class TestFig2:
    def test_curve_ordering_in_temperature(self, capsys, tmp_path):
        out = tmp_path / "fig2.csv"
        code, _, _ = run_cli(
            ["fig2", "--y-grid", "0:0.99:12", "--out", str(out)], capsys
        )
        assert code == 0
        header, rows = parse_csv(out.read_text())
        assert header == ["y", "temperature_K", "tau_e"]
        by_point = {(r[0], r[1]): r[2] for r in rows}
        ys = sorted({r[0] for r in rows})
        for y in ys:
            assert by_point[(y, 300.0)] >= by_point[(y, 150.0)] >= by_point[(y, 50.0)]
        # finite birth time even at extreme mismatch and room temperature
        assert 0.0 < by_point[(0.99, 300.0)] < 20.0
        for y in ys:
            for t in (50.0, 150.0, 300.0):
                curve = [by_point[(yy, t)] for yy in ys]
                assert all(b >= a for a, b in zip(curve, curve[1:]))

    def test_empty_grid_is_usage_error(self, capsys):
        code, _, _ = run_cli(["fig2", "--y-grid", "0:0.9:-3"], capsys)
        assert code == 2


class TestFig3:
    def test_anchors(self, capsys, tmp_path):
        out = tmp_path / "fig3.csv"
        code, _, _ = run_cli(
            ["fig3", "--y-grid", "0:0.99:100", "--out", str(out)], capsys
        )
        assert code == 0
        header, rows = parse_csv(out.read_text())
        assert header == ["y", "temperature_K", "log_negativity"]
        by_point = {(round(r[0], 4), r[1]): r[2] for r in rows}
        # TMSV limit at the default tau = 4.543
        assert by_point[(0.0, 0.0)] == pytest.approx(2 * 4.543, abs=1e-9)
        # still entangled at extreme mismatch for 50 K
        assert by_point[(0.99, 50.0)] > 1e-6
        # separable well past the boundary at 300 K
        assert by_point[(0.95, 300.0)] == 0.0

    def test_non_increasing_in_mismatch(self, capsys, tmp_path):
        out = tmp_path / "fig3.csv"
        run_cli(["fig3", "--y-grid", "0:0.99:50", "--out", str(out)], capsys)
        _, rows = parse_csv(out.read_text())
        for temp in (0.0, 50.0, 300.0):
            curve = [r[2] for r in rows if r[1] == temp]
            assert all(b <= a + 1e-12 for a, b in zip(curve, curve[1:]))


class TestFig4:
    def test_boundary(self, capsys, tmp_path):
        out = tmp_path / "fig4.csv"
        code, _, _ = run_cli(["fig4", "--out", str(out)], capsys)
        assert code == 0
        header, rows = parse_csv(out.read_text())
        assert header == ["y", "t_c_kelvin"]
        t_values = [r[1] for r in rows]
        assert all(b < a for a, b in zip(t_values, t_values[1:]))
        by_y = {round(r[0], 4): r[1] for r in rows}
        assert by_y[0.3] > 300.0
        assert by_y[0.0] == pytest.approx(360.0, rel=0.05)

    def test_mismatch_at_or_past_one_is_usage_error(self, capsys):
        code, _, _ = run_cli(["fig4", "--y-grid", "0:1.0:5"], capsys)
        assert code == 2


class TestFig5:
    def test_columns_and_zero_temperature_row(self, capsys, tmp_path):
        out = tmp_path / "fig5.csv"
        code, _, _ = run_cli(
            ["fig5", "--temp-grid", "0:600:13", "--out", str(out)], capsys
        )
        assert code == 0
        header, rows = parse_csv(out.read_text())
        assert header == [
            "temperature_K",
            "sqrt_s0",
            "n_mean_y0",
            "n_mean_y0.5",
            "n_mean_y0.7",
        ]
        assert rows[0][0] == 0.0
        assert rows[0][1] == 0.0  # sqrt(S0) vanishes at T = 0
        assert rows[0][2] > 0.0  # but pairs have been produced
        sqrt_s0 = [r[1] for r in rows]
        assert all(b > a for a, b in zip(sqrt_s0, sqrt_s0[1:]))

    def test_crossings_match_phase_boundary(self, capsys, tmp_path):
        fig5 = tmp_path / "fig5.csv"
        fig4 = tmp_path / "fig4.csv"
        run_cli(["fig5", "--out", str(fig5)], capsys)
        run_cli(["fig4", "--y-grid", "0:0.7:15", "--out", str(fig4)], capsys)
        _, rows5 = parse_csv(fig5.read_text())
        _, rows4 = parse_csv(fig4.read_text())
        t_c = {round(r[0], 4): r[1] for r in rows4}
        for col, y in ((2, 0.0), (3, 0.5), (4, 0.7)):
            diff = [r[col] - r[1] for r in rows5]  # mean photons - sqrt(S0)
            temps = [r[0] for r in rows5]
            crossing = None
            for i in range(len(diff) - 1):
                if diff[i] > 0.0 >= diff[i + 1]:
                    frac = diff[i] / (diff[i] - diff[i + 1])
                    crossing = temps[i] + frac * (temps[i + 1] - temps[i])
                    break
            assert crossing is not None
            assert abs(crossing - t_c[y]) / t_c[y] < 0.01


class TestEval:
    def test_separable_initial_point(self, capsys):
        code, out, _ = run_cli(
            ["eval", "--y", "0", "--tau", "0", "--temp-k", "0"], capsys
        )
        assert code == 1
        report = dict(line.split("=") for line in out.strip().split("\n"))
        assert report["verdict"] == "separable"
        assert float(report["S"]) == 0.0
        assert float(report["det_gamma"]) == 0.0
        assert float(report["E_N"]) == 0.0

    def test_entangled_tmsv_point(self, capsys):
        code, out, _ = run_cli(
            ["eval", "--y", "0", "--tau", "1", "--temp-k", "0"], capsys
        )
        assert code == 0
        report = dict(line.split("=") for line in out.strip().split("\n"))
        assert report["verdict"] == "entangled"
        assert float(report["E_N"]) == pytest.approx(2.0, rel=1e-9)
        for key in (
            "nbar1", "nbar2", "n1", "n2", "r", "I1", "I2",
            "S0", "S", "det_gamma", "nu_minus_pt", "E_N", "W",
        ):
            assert key in report

    def test_room_temperature_mismatch_point_separable(self, capsys):
        code, out, _ = run_cli(
            ["eval", "--y", "0.5", "--tau", "2.881", "--temp-k", "300"], capsys
        )
        assert code == 1
        assert "verdict=separable" in out

    def test_invalid_parameters_exit_2(self, capsys):
        code, _, err = run_cli(
            ["eval", "--y", "1.5", "--tau", "1", "--temp-k", "0"], capsys
        )
        assert code == 2
        assert "error" in err


class TestConfigFile:
    def test_config_applies_and_flags_win(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("y = 0.5\ntau = 1.0\ntemp_k = 0\n# comment\n")
        code, out, _ = run_cli(["eval", "--config", str(cfg)], capsys)
        assert code == 0
        report = dict(line.split("=") for line in out.strip().split("\n"))
        assert float(report["r"]) == pytest.approx(np.sqrt(0.75), rel=1e-12)
        # flag overrides the file
        code, out, _ = run_cli(
            ["eval", "--config", str(cfg), "--y", "0"], capsys
        )
        report = dict(line.split("=") for line in out.strip().split("\n"))
        assert float(report["r"]) == pytest.approx(1.0, rel=1e-12)

    def test_unknown_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("frobnicate = 3\n")
        code, _, err = run_cli(["eval", "--config", str(cfg)], capsys)
        assert code == 2


class TestCsvFormat:
    def test_lf_endings_and_digit_count(self, capsys, tmp_path):
        out = tmp_path / "fig1.csv"
        run_cli(["fig1", "--temp-grid", "0:100:3", "--out", str(out)], capsys)
        raw = out.read_bytes()
        assert b"\r" not in raw
        assert not raw.decode().split("\n")[1].endswith(",")
        first_value = raw.decode().split("\n")[1].split(",")[0]
        mantissa = first_value.split("e")[0].replace("-", "").replace(".", "")
        assert len(mantissa) == 12

    def test_stdout_when_no_out_flag(self, capsys):
        code, out, _ = run_cli(["fig1", "--temp-grid", "0:10:2"], capsys)
        assert code == 0
        assert out.startswith("temperature_K,y,tau_e\n")


def test_module_entry_point_runs():
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "pdc_entanglement.cli",
            "eval",
            "--y",
            "0",
            "--tau",
            "1",
            "--temp-k",
            "0",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "verdict=entangled" in proc.stdout


def test_oracle_check_moments_only(capsys):
    code, out, _ = run_cli(["oracle-check", "--skip-fock"], capsys)
    assert code == 0
    assert "PASS" in out


def test_oracle_check_full(capsys):
    code, out, _ = run_cli(["oracle-check"], capsys)
    assert code == 0
    assert "negativity" in out
    assert "PASS" in out


class TestRowsRederivableByEval:
    """Spot-check emitted rows against single-point evaluation."""

    def test_fig3_rows_match_eval(self, capsys, tmp_path):
        out = tmp_path / "fig3.csv"
        run_cli(["fig3", "--y-grid", "0:0.9:10", "--out", str(out)], capsys)
        _, rows = parse_csv(out.read_text())
        for row in rows[:: len(rows) // 3]:
            y, temp, en_csv = row
            code, text, _ = run_cli(
                [
                    "eval",
                    "--y", repr(y),
                    "--tau", "4.543",
                    "--temp-k", repr(temp),
                ],
                capsys,
            )
            report = dict(line.split("=") for line in text.strip().split("\n"))
            # the CSV carries 12 digits of y; one ulp of y moves E_N by
            # ~1e-10 through the rounded matrix entries
            assert float(report["E_N"]) == pytest.approx(
                en_csv, rel=1e-8, abs=1e-8
            )
            assert code == (0 if en_csv > 0 else 1)

    def test_fig5_row_matches_eval(self, capsys, tmp_path):
        out = tmp_path / "fig5.csv"
        run_cli(["fig5", "--temp-grid", "100:300:3", "--out", str(out)], capsys)
        _, rows = parse_csv(out.read_text())
        temp, sqrt_s0, mean_y0 = rows[1][0], rows[1][1], rows[1][2]
        _, text, _ = run_cli(
            ["eval", "--y", "0", "--tau", "2.881", "--temp-k", repr(temp)],
            capsys,
        )
        report = dict(line.split("=") for line in text.strip().split("\n"))
        assert np.sqrt(float(report["S0"])) == pytest.approx(sqrt_s0, rel=1e-10)
        n_mean = (float(report["n1"]) + float(report["n2"])) / 2.0
        assert n_mean == pytest.approx(mean_y0, rel=1e-10)

    def test_fig1_birth_time_sits_on_boundary(self, capsys, tmp_path):
        out = tmp_path / "fig1.csv"
        run_cli(["fig1", "--temp-grid", "200:300:2", "--out", str(out)], capsys)
        _, rows = parse_csv(out.read_text())
        temp, y, tau_e = rows[-1]
        _, text, _ = run_cli(
            ["eval", "--y", repr(y), "--tau", repr(tau_e), "--temp-k", repr(temp)],
            capsys,
        )
        report = dict(line.split("=") for line in text.strip().split("\n"))
        # at tau_E the indicator crosses zero: |S| is tiny against S0
        assert abs(float(report["S"])) < 1e-6 * float(report["S0"])
