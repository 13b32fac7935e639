"""End-to-end CLI tests driving `python -m msdiff` as a subprocess."""

import csv
import subprocess
import sys


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "msdiff", *args],
        capture_output=True, text=True, cwd=cwd,
    )


SMALL_RUN = ("--j-max", "16", "--t-end", "0.02")


class TestRun:
    def test_happy_path(self, tmp_path):
        out = tmp_path / "snap.csv"
        result = run_cli("run", "--scenario", "uphill-semidegenerate",
                         *SMALL_RUN, "--output", str(out))
        assert result.returncode == 0
        assert out.exists()
        header = out.read_text().splitlines()[0]
        assert header == "t,x,xi1,xi2,xi3,n1,n2,n3"
        assert "steps" in result.stderr
        assert result.stdout == ""

    def test_stdout_output(self):
        result = run_cli("run", *SMALL_RUN, "--output", "-")
        assert result.returncode == 0
        assert result.stdout.startswith("t,x,xi1,xi2,xi3,n1,n2,n3")

    def test_unknown_scenario_exit_1_and_lists_names(self):
        result = run_cli("run", "--scenario", "bogus")
        assert result.returncode == 1
        assert "uphill-semidegenerate" in result.stderr
        assert "duncan-toor-asymptotic" in result.stderr

    def test_custom_missing_fields_exit_1(self):
        result = run_cli("run", "--scenario", "custom", "--d12", "0.5")
        assert result.returncode == 1
        assert "d13" in result.stderr

    def test_negative_t_end_exit_1(self):
        result = run_cli("run", "--t-end", "-1")
        assert result.returncode == 1

    def test_unknown_flag_exit_1(self):
        result = run_cli("run", "--frobnicate")
        assert result.returncode == 1

    def test_solver_blowup_exit_2(self, tmp_path):
        # Global scheme driven far above its stability bound diverges; the
        # CLI reports a runtime solver failure.
        result = run_cli("run", "--scenario", "uphill-semidegenerate",
                         "--j-max", "16", "--scheme", "global",
                         "--dt", "0.05", "--t-end", "20",
                         "--output", str(tmp_path / "x.csv"))
        assert result.returncode == 2
        assert "singular" in result.stderr

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "scenario = uphill-semidegenerate\n"
            "j_max = 16\n"
            "t_end = 0.04\n"
            "output = from_file.csv\n"
        )
        out = tmp_path / "cli_wins.csv"
        result = run_cli("run", "--config", str(cfg), "--t-end", "0.02",
                         "--output", str(out), cwd=tmp_path)
        assert result.returncode == 0
        assert out.exists()
        assert not (tmp_path / "from_file.csv").exists()
        last = out.read_text().splitlines()[-1]
        assert float(last.split(",")[0]) == 0.02

    def test_determinism_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert run_cli("run", *SMALL_RUN, "--output", str(out)).returncode == 0
        assert a.read_bytes() == b.read_bytes()


class TestConverge:
    def test_errors_strictly_decrease(self, tmp_path):
        out = tmp_path / "conv.csv"
        result = run_cli("converge", "--scenario", "duncan-toor-asymptotic",
                         "--j-max", "12", "--dt", "cfl,cfl/2,cfl/4",
                         "--reference", "cfl/8", "--output", str(out))
        assert result.returncode == 0
        with out.open() as handle:
            rows = list(csv.DictReader(handle))
        assert [r["scheme"] for r in rows] == ["global"] * 3
        errors = [float(r["l1_error"]) for r in rows]
        assert errors[0] > errors[1] > errors[2] > 0.0

    def test_richardson_row_matches_global(self, tmp_path):
        out = tmp_path / "conv.csv"
        result = run_cli("converge", "--scenario", "uphill-semidegenerate",
                         "--j-max", "12", "--dt", "cfl",
                         "--richardson", "cfl:1",
                         "--reference", "cfl/4", "--output", str(out))
        assert result.returncode == 0
        with out.open() as handle:
            rows = list(csv.DictReader(handle))
        assert rows[0]["l1_error"] == rows[1]["l1_error"]
        assert rows[1]["scheme"] == "richardson"

    def test_plot_written(self, tmp_path):
        png = tmp_path / "conv.png"
        result = run_cli("converge", "--j-max", "12", "--dt", "cfl,cfl/2",
                         "--reference", "cfl/4",
                         "--output", str(tmp_path / "conv.csv"),
                         "--plot", str(png))
        assert result.returncode == 0
        assert png.stat().st_size > 0

    def test_bad_richardson_spec(self):
        result = run_cli("converge", "--richardson", "no-colon")
        assert result.returncode == 1


class TestCompare:
    def test_self_comparison_is_zero(self, tmp_path):
        snap = tmp_path / "snap.csv"
        run_cli("run", *SMALL_RUN, "--output", str(snap))
        result = run_cli("compare", str(snap), str(snap))
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "t,l1_error"
        assert len(lines) > 1
        assert all(float(line.split(",")[1]) == 0.0 for line in lines[1:])

    def test_grid_mismatch_exit_1(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli("run", *SMALL_RUN, "--output", str(a))
        run_cli("run", "--j-max", "20", "--t-end", "0.02", "--output", str(b))
        result = run_cli("compare", str(a), str(b))
        assert result.returncode == 1

    def test_missing_file_exit_1(self, tmp_path):
        result = run_cli("compare", str(tmp_path / "none.csv"), str(tmp_path / "none.csv"))
        assert result.returncode == 1


class TestScenariosAndReport:
    def test_scenarios_lists_catalog(self):
        result = run_cli("scenarios")
        assert result.returncode == 0
        assert "uphill-semidegenerate" in result.stdout
        assert "d12=0.0833" in result.stdout

    def test_report_writes_csv_and_figures(self, tmp_path):
        outdir = tmp_path / "rep"
        result = run_cli("report", *SMALL_RUN, "--outdir", str(outdir))
        assert result.returncode == 0
        assert (outdir / "snapshots.csv").exists()
        for name in ("profiles.png", "fluxes.png", "spacetime.png",
                     "uphill_mask.png"):
            assert (outdir / name).stat().st_size > 0

    def test_help_exit_0(self):
        assert run_cli("--help").returncode == 0
        assert run_cli("run", "--help").returncode == 0
