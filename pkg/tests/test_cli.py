"""Command-line interface tests: subcommands, exit codes, outputs."""

import numpy as np
import pytest

from phasejump.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, run_cli

SIMULATE_ZERO_FIELD = """
mode = simulate
envelope.family = gaussian
envelope.amplitude = 0.0
envelope.width = 0.33125
carrier.ratio = 0.75
"""

SWEEP_SMALL = """
mode = sweep
envelope.family = gaussian
envelope.amplitude = 0.02
envelope.width = 0.33125
sweep.start = 0.7
sweep.stop = 0.8
sweep.step = 0.05
sweep.solver = both
"""


def write_cfg(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestPresetCommands:
    def test_list_prints_ids(self, capsys):
        assert run_cli(["preset", "list"]) == EXIT_OK
        out = capsys.readouterr().out
        for preset_id in ("fig3a", "fig4f-blue", "fig5"):
            assert preset_id in out

    def test_unknown_preset_is_validation_error(self, capsys):
        assert run_cli(["preset", "run", "not-a-preset"]) == EXIT_VALIDATION
        assert "unknown preset" in capsys.readouterr().err

    def test_preset_run_writes_csv(self, tmp_path):
        out = tmp_path / "t.csv"
        assert run_cli(["preset", "run", "fig4a-blue", "--out", str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "t,re_ca,im_ca,re_cb,im_cb,pop_a,norm"
        assert len(lines) > 100

    def test_preset_run_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(["preset", "run", "fig4a-blue", "--out", str(out1)]) == EXIT_OK
        assert run_cli(["preset", "run", "fig4a-blue", "--out", str(out2)]) == EXIT_OK
        assert out1.read_bytes() == out2.read_bytes()


class TestRunCommands:
    def test_simulate_zero_field(self, tmp_path):
        cfg = write_cfg(tmp_path, SIMULATE_ZERO_FIELD)
        out = tmp_path / "traj.csv"
        assert run_cli(["simulate", "--config", cfg, "--out", str(out)]) == EXIT_OK
        rows = out.read_text().splitlines()[1:]
        pop = np.array([float(r.split(",")[5]) for r in rows])
        assert np.all(pop == 0.0)

    def test_simulate_to_stdout(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, SIMULATE_ZERO_FIELD)
        assert run_cli(["simulate", "--config", cfg]) == EXIT_OK
        assert capsys.readouterr().out.startswith("t,re_ca")

    def test_sweep_with_svg_plot(self, tmp_path):
        cfg = write_cfg(tmp_path, SWEEP_SMALL)
        out = tmp_path / "s.csv"
        plot = tmp_path / "s.svg"
        code = run_cli(["sweep", "--config", cfg, "--out", str(out),
                        "--plot", str(plot)])
        assert code == EXIT_OK
        assert out.read_text().splitlines()[0] == \
            "nu_over_omega,pop_exact,pop_approx,rel_dev"
        svg = plot.read_text()
        assert svg.count("<polyline") == 2  # exact + approx

    def test_sweep_with_png_plot(self, tmp_path):
        cfg = write_cfg(tmp_path, SWEEP_SMALL)
        plot = tmp_path / "s.png"
        assert run_cli(["sweep", "--config", cfg, "--out",
                        str(tmp_path / "s.csv"), "--plot", str(plot)]) == EXIT_OK
        data = plot.read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n"

    def test_optimize_writes_report(self, tmp_path):
        text = (
            "mode = optimize\nenvelope.family = gaussian\n"
            "envelope.amplitude = 0.02\nenvelope.width = 0.33125\n"
            "optimize.ratio = 0.75\noptimize.shapes = tanh_fall\n"
            "optimize.steepness_factors = 1,5\n"
        )
        cfg = write_cfg(tmp_path, text)
        out = tmp_path / "opt.csv"
        assert run_cli(["optimize", "--config", cfg, "--out", str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        assert len(lines) == 3
        assert sum(row.split(",")[7] == "1" for row in lines[1:]) == 1

    def test_compare_subcommand(self, tmp_path):
        text = SWEEP_SMALL.replace("mode = sweep", "mode = compare")
        text = text.replace("sweep.solver = both\n", "")
        cfg = write_cfg(tmp_path, text)
        out = tmp_path / "c.csv"
        assert run_cli(["compare", "--config", cfg, "--out", str(out)]) == EXIT_OK
        row = out.read_text().splitlines()[1].split(",")
        assert row[1] != "nan" and row[2] != "nan"


class TestExitCodes:
    def test_invalid_config_is_1(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, SIMULATE_ZERO_FIELD.replace("0.33125", "-1"))
        assert run_cli(["simulate", "--config", cfg]) == EXIT_VALIDATION
        assert "envelope.width" in capsys.readouterr().err

    def test_missing_config_file_is_1(self, capsys):
        assert run_cli(["simulate", "--config", "/nonexistent.cfg"]) == EXIT_VALIDATION
        assert "cannot read config" in capsys.readouterr().err

    def test_mode_subcommand_mismatch_is_1(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, SIMULATE_ZERO_FIELD)
        assert run_cli(["sweep", "--config", cfg]) == EXIT_VALIDATION
        assert "subcommand" in capsys.readouterr().err

    def test_bad_flag_is_1(self, capsys):
        assert run_cli(["simulate"]) == EXIT_VALIDATION

    def test_numerical_failure_is_2(self, tmp_path, capsys):
        # Window cut inside the pulse: every optimize candidate fails.
        text = (
            "mode = optimize\nenvelope.family = gaussian\n"
            "envelope.amplitude = 0.02\nenvelope.width = 0.33125\n"
            "optimize.ratio = 0.75\noptimize.shapes = tanh_fall\n"
            "optimize.steepness_factors = 1\n"
            "sim.t_start = -2\nsim.t_end = 2\n"
        )
        cfg = write_cfg(tmp_path, text)
        with pytest.warns(UserWarning):
            assert run_cli(["optimize", "--config", cfg]) == EXIT_NUMERICAL
        assert "numerical failure" in capsys.readouterr().err


class TestWorkers:
    def test_env_var_fallback(self, tmp_path, monkeypatch):
        cfg = write_cfg(tmp_path, SWEEP_SMALL)
        out1, out2 = tmp_path / "w1.csv", tmp_path / "w2.csv"
        monkeypatch.delenv("PHASEJUMP_WORKERS", raising=False)
        assert run_cli(["sweep", "--config", cfg, "--out", str(out1)]) == EXIT_OK
        monkeypatch.setenv("PHASEJUMP_WORKERS", "2")
        assert run_cli(["sweep", "--config", cfg, "--out", str(out2)]) == EXIT_OK
        assert out1.read_bytes() == out2.read_bytes()

    def test_bad_env_var_is_validation_error(self, tmp_path, monkeypatch, capsys):
        cfg = write_cfg(tmp_path, SWEEP_SMALL)
        monkeypatch.setenv("PHASEJUMP_WORKERS", "many")
        assert run_cli(["sweep", "--config", cfg]) == EXIT_VALIDATION
        assert "PHASEJUMP_WORKERS" in capsys.readouterr().err

    def test_workers_flag_must_be_positive(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, SWEEP_SMALL)
        assert run_cli(["sweep", "--config", cfg, "--workers", "0"]) == EXIT_VALIDATION
