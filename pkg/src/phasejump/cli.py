"""Command-line interface.

Subcommands::

    phasejump simulate --config run.cfg [--out t.csv] [--plot t.svg] [--workers N]
    phasejump sweep    --config run.cfg [...]
    phasejump optimize --config run.cfg [...]
    phasejump compare  --config run.cfg [...]
    phasejump preset list
    phasejump preset run <id> [--out s.csv] [--plot s.png] [--workers N]

Exit status: 0 on success, 1 for validation errors (bad flags, bad config,
unknown preset), 2 for numerical failures.  Diagnostics go to stderr; CSV
goes to --out or stdout.  Worker count resolves as --workers, then the
config's ``workers`` key, then the PHASEJUMP_WORKERS environment variable,
then 1.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import Mode, RunConfig, parse_config
from .dynamics import integrate_tls
from .errors import ConfigError, PhaseJumpError
from .lambda_system import integrate_lambda
from .output import sweep_series, trajectory_series, write_csv
from .presets import get_preset, preset_ids
from .pulses import AtomKind
from .sweep import default_phase_candidates, optimize_phase, sweep_frequency, sweep_frequency_lambda

__all__ = ["run_cli", "main"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

WORKERS_ENV_VAR = "PHASEJUMP_WORKERS"


class _CliValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; remap into the validation
    # path so exit codes stay 0/1/2 = ok/validation/numerical.
    def error(self, message):
        raise _CliValidationError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="phasejump", add_help=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_command(name: str, help_text: str):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to a config document")
        _add_output_flags(cmd)
        return cmd

    def _add_output_flags(cmd):
        cmd.add_argument("--out", help="CSV output path (default: stdout)")
        cmd.add_argument("--plot", help="figure output path (.svg/.png/.pdf)")
        cmd.add_argument("--workers", type=int, help="worker processes for sweeps")

    add_run_command("simulate", "integrate one trajectory, emit trajectory CSV")
    add_run_command("sweep", "frequency sweep, emit sweep CSV")
    add_run_command("optimize", "phase-shape search, emit report CSV")
    add_run_command("compare", "exact-vs-approximate sweep, emit deviation CSV")

    preset = sub.add_parser("preset", help="bundled parameter sets")
    preset_sub = preset.add_subparsers(dest="preset_command", required=True)
    preset_sub.add_parser("list", help="list preset ids")
    run = preset_sub.add_parser("run", help="run one preset")
    run.add_argument("preset_id", metavar="id")
    _add_output_flags(run)

    return parser


def _resolve_workers(flag_value, cfg: RunConfig) -> int:
    if flag_value is not None:
        value = flag_value
    elif cfg.workers is not None:
        value = cfg.workers
    else:
        env = os.environ.get(WORKERS_ENV_VAR)
        if env is None:
            return 1
        try:
            value = int(env)
        except ValueError:
            raise _CliValidationError(
                f"{WORKERS_ENV_VAR} must be an integer, got {env!r}"
            ) from None
    if value < 1:
        raise _CliValidationError(f"worker count must be >= 1, got {value}")
    return value


def _emit_csv(result, out_path) -> None:
    write_csv(result, out_path if out_path else sys.stdout)


def _execute(cfg: RunConfig, out, plot, workers_flag, preset_id: str = "") -> None:
    workers = _resolve_workers(workers_flag, cfg)
    out = out if out is not None else cfg.out
    plot = plot if plot is not None else cfg.plot

    if cfg.mode is Mode.SIMULATE:
        if cfg.atom.kind is AtomKind.LAMBDA:
            traj = integrate_lambda(cfg.drive, cfg.atom, cfg.sim)
        else:
            traj = integrate_tls(cfg.pulse, cfg.atom, cfg.sim)
        _emit_csv(traj, out)
        if plot:
            from .plotting import render_plot

            render_plot(trajectory_series(traj), plot,
                        x_label="t", y_label="amplitude magnitude")
        return

    if cfg.mode in (Mode.SWEEP, Mode.COMPARE):
        ratios = cfg.grid.ratios()
        if cfg.atom.kind is AtomKind.LAMBDA:
            result = sweep_frequency_lambda(
                cfg.drive, cfg.atom, ratios, cfg.solver,
                sim=cfg.sim, workers=workers, preset_id=preset_id,
            )
        else:
            result = sweep_frequency(
                cfg.pulse, cfg.atom, ratios, cfg.solver,
                sim=cfg.sim, workers=workers, preset_id=preset_id,
            )
        _emit_csv(result, out)
        if plot:
            from .plotting import render_plot

            render_plot(sweep_series(result), plot, x_label="nu/omega",
                        y_label="|C_a(inf)|", prefer_log_y=True)
        return

    if cfg.mode is Mode.OPTIMIZE:
        opt = cfg.optimize
        candidates = default_phase_candidates(
            cfg.pulse.envelope.width,
            shapes=opt.shapes,
            amplitudes=opt.amplitudes,
            steepness_factors=opt.steepness_factors,
        )
        report = optimize_phase(
            cfg.pulse, cfg.atom, opt.ratio, candidates,
            sim=cfg.sim, workers=workers,
        )
        _emit_csv(report, out)
        if plot:
            from .output import Series
            from .plotting import render_plot

            import numpy as np

            amps = np.array([c.amplitude for c in report.candidates])
            render_plot(
                [Series("candidate amplitude", np.arange(amps.size, dtype=float), amps)],
                plot, x_label="candidate index", y_label="|C_a(inf)|",
                prefer_log_y=True,
            )
        return

    raise _CliValidationError(f"cannot execute mode {cfg.mode.value!r} directly")


def run_cli(argv) -> int:
    """Run the CLI on ``argv`` (no program name); returns the exit status."""
    parser = _build_parser()
    try:
        try:
            args = parser.parse_args(list(argv))
        except SystemExit as exc:  # --help and friends
            return int(exc.code or 0)

        if args.command == "preset":
            if args.preset_command == "list":
                for preset_id in preset_ids():
                    print(f"{preset_id}\t{get_preset(preset_id).note}")
                return EXIT_OK
            try:
                entry = get_preset(args.preset_id)
            except ValueError as exc:
                raise _CliValidationError(str(exc)) from None
            cfg = entry.config
            _execute(cfg, args.out, args.plot, args.workers, preset_id=entry.id)
            return EXIT_OK

        config_path = Path(args.config)
        try:
            text = config_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise _CliValidationError(f"cannot read config {config_path}: {exc}") from None
        cfg = parse_config(text)
        expected = Mode(args.command)
        if cfg.mode is not expected:
            raise _CliValidationError(
                f"config mode is {cfg.mode.value!r} but the "
                f"{expected.value!r} subcommand was invoked"
            )
        if cfg.mode is Mode.PRESET:
            raise _CliValidationError("preset configs run via 'preset run <id>'")
        _execute(cfg, args.out, args.plot, args.workers)
        return EXIT_OK

    except _CliValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except PhaseJumpError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
