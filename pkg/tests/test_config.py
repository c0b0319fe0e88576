"""Config document parsing, validation, and round-trip tests."""

import math

import numpy as np
import pytest

from phasejump.config import (
    Mode,
    OptimizeSpec,
    RunConfig,
    SweepGrid,
    parse_config,
    serialize_config,
)
from phasejump.dynamics import SimConfig
from phasejump.errors import ConfigError
from phasejump.lambda_system import LambdaDrive
from phasejump.pulses import (
    AtomKind,
    AtomSpec,
    Envelope,
    EnvelopeFamily,
    PhaseFunction,
    PhaseShape,
    PhaseTerm,
    PulseSpec,
)
from phasejump.sweep import Solver

MINIMAL_SIMULATE = """
mode = simulate
envelope.family = gaussian
envelope.amplitude = 0.04375
envelope.width = 0.33125
carrier.ratio = 0.75
"""


class TestParseBasics:
    def test_minimal_simulate_fills_defaults(self):
        cfg = parse_config(MINIMAL_SIMULATE)
        assert cfg.mode is Mode.SIMULATE
        assert cfg.atom == AtomSpec.two_level(1.0)
        assert cfg.pulse.carrier == 0.75
        assert cfg.pulse.phase == PhaseFunction()
        assert cfg.sim == SimConfig()
        assert cfg.workers is None and cfg.out is None

    def test_comments_and_blank_lines(self):
        text = "# full line comment\n\nmode = simulate  # trailing\n" + \
            "envelope.family = gaussian\nenvelope.amplitude = 0.1\n" + \
            "envelope.width = 0.5\ncarrier.ratio = 1.0\n"
        assert parse_config(text).mode is Mode.SIMULATE

    def test_missing_mode(self):
        with pytest.raises(ConfigError, match="mode is required"):
            parse_config("envelope.family = gaussian\n")

    def test_empty_document(self):
        with pytest.raises(ConfigError, match="mode is required"):
            parse_config("")

    def test_negative_width_names_key(self):
        text = MINIMAL_SIMULATE.replace("0.33125", "-0.4")
        with pytest.raises(ConfigError, match="envelope.width"):
            parse_config(text)

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(MINIMAL_SIMULATE + "envelope.wobble = 3\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config(MINIMAL_SIMULATE + "carrier.ratio = 0.9\n")

    def test_syntax_error_has_location(self):
        with pytest.raises(ConfigError) as err:
            parse_config("mode = simulate\nthis line has no equals\n")
        assert err.value.line == 2
        assert "key = value" in str(err.value)

    def test_bad_number_names_key(self):
        text = MINIMAL_SIMULATE.replace("0.75", "three")
        with pytest.raises(ConfigError, match="carrier.ratio"):
            parse_config(text)

    def test_bad_enum_lists_options(self):
        text = MINIMAL_SIMULATE.replace("gaussian", "square")
        with pytest.raises(ConfigError, match="gaussian, sech"):
            parse_config(text)

    def test_missing_value(self):
        with pytest.raises(ConfigError, match="missing value"):
            parse_config("mode =\n")


class TestPhaseSection:
    def test_terms_parse_in_order(self):
        text = MINIMAL_SIMULATE + (
            "phase.1.shape = sech\n"
            "phase.1.amplitude = 1.5707963267948966\n"
            "phase.1.steepness = 3.3125\n"
            "phase.2.shape = tanh_rise\n"
            "phase.2.amplitude = 1.5707963267948966\n"
            "phase.2.steepness = 0.33125\n"
            "phase.2.center = 0.5\n"
        )
        cfg = parse_config(text)
        assert len(cfg.pulse.phase.terms) == 2
        assert cfg.pulse.phase.terms[0].shape is PhaseShape.SECH
        assert cfg.pulse.phase.terms[1].center == 0.5

    def test_constant_term_rejects_steepness(self):
        text = MINIMAL_SIMULATE + (
            "phase.1.shape = constant\n"
            "phase.1.amplitude = 0.5\n"
            "phase.1.steepness = 2.0\n"
        )
        with pytest.raises(ConfigError, match="no steepness"):
            parse_config(text)

    def test_gapped_term_numbers_rejected(self):
        text = MINIMAL_SIMULATE + (
            "phase.2.shape = sech\n"
            "phase.2.amplitude = 1.0\n"
            "phase.2.steepness = 1.0\n"
        )
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(text)


class TestModeSchemas:
    def test_sweep_defaults(self):
        text = (
            "mode = sweep\nenvelope.family = gaussian\n"
            "envelope.amplitude = 0.04\nenvelope.width = 0.33\n"
        )
        cfg = parse_config(text)
        assert cfg.grid == SweepGrid(0.25, 1.5, 0.01)
        assert cfg.solver is Solver.EXACT
        assert cfg.pulse.carrier == 1.0  # placeholder replaced per point

    def test_sweep_rejects_carrier(self):
        text = (
            "mode = sweep\nenvelope.family = gaussian\n"
            "envelope.amplitude = 0.04\nenvelope.width = 0.33\n"
            "carrier.ratio = 0.75\n"
        )
        with pytest.raises(ConfigError, match="carrier.ratio"):
            parse_config(text)

    def test_compare_forces_both(self):
        text = (
            "mode = compare\nenvelope.family = gaussian\n"
            "envelope.amplitude = 0.04\nenvelope.width = 0.33\n"
        )
        assert parse_config(text).solver is Solver.BOTH

    def test_compare_rejects_solver_key(self):
        text = (
            "mode = compare\nenvelope.family = gaussian\n"
            "envelope.amplitude = 0.04\nenvelope.width = 0.33\n"
            "sweep.solver = exact\n"
        )
        with pytest.raises(ConfigError, match="sweep.solver"):
            parse_config(text)

    def test_optimize_requires_ratio(self):
        text = (
            "mode = optimize\nenvelope.family = gaussian\n"
            "envelope.amplitude = 0.04\nenvelope.width = 0.33\n"
        )
        with pytest.raises(ConfigError, match="optimize.ratio"):
            parse_config(text)

    def test_optimize_parses_candidate_lists(self):
        text = (
            "mode = optimize\nenvelope.family = gaussian\n"
            "envelope.amplitude = 0.04\nenvelope.width = 0.33\n"
            "optimize.ratio = 0.5\n"
            "optimize.shapes = tanh_fall,sech\n"
            "optimize.steepness_factors = 1,5\n"
        )
        cfg = parse_config(text)
        assert cfg.optimize.shapes == (PhaseShape.TANH_FALL, PhaseShape.SECH)
        assert cfg.optimize.steepness_factors == (1.0, 5.0)

    def test_lambda_simulate(self):
        text = (
            "mode = simulate\natom.kind = lambda\natom.omega_ab = 1.0\n"
            "atom.omega_ac = 0.9\n"
            "pulse1.envelope.family = sech\npulse1.envelope.amplitude = 0.04\n"
            "pulse1.envelope.width = 0.075\npulse1.carrier.ratio = 0.8\n"
            "pulse2.envelope.family = sech\npulse2.envelope.amplitude = 0.04\n"
            "pulse2.envelope.width = 0.075\npulse2.carrier.ratio = 0.8\n"
        )
        cfg = parse_config(text)
        assert cfg.atom.kind is AtomKind.LAMBDA
        assert cfg.drive.pulse2.carrier == pytest.approx(0.72)
        assert cfg.pulse is None

    def test_lambda_requires_omega_ac(self):
        text = "mode = simulate\natom.kind = lambda\n"
        with pytest.raises(ConfigError, match="atom.omega_ac"):
            parse_config(text)

    def test_two_level_rejects_omega_ac(self):
        text = MINIMAL_SIMULATE + "atom.omega_ac = 0.9\n"
        with pytest.raises(ConfigError, match="omega_ac"):
            parse_config(text)

    def test_optimize_rejects_lambda(self):
        text = (
            "mode = optimize\natom.kind = lambda\natom.omega_ac = 1.0\n"
            "optimize.ratio = 0.5\n"
        )
        with pytest.raises(ConfigError, match="two-level"):
            parse_config(text)

    def test_preset_mode(self):
        cfg = parse_config("mode = preset\npreset.id = fig3a\n")
        assert cfg.mode is Mode.PRESET and cfg.preset_id == "fig3a"

    def test_sim_overrides(self):
        text = MINIMAL_SIMULATE + (
            "sim.rel_tol = 1e-8\nsim.max_step = 0.05\n"
            "sim.t_start = -30\nsim.t_end = 30\nsim.record_stride = 4\n"
        )
        cfg = parse_config(text)
        assert cfg.sim == SimConfig(rel_tol=1e-8, max_step=0.05,
                                    t_start=-30.0, t_end=30.0, record_stride=4)

    def test_sim_window_order_checked(self):
        text = MINIMAL_SIMULATE + "sim.t_start = 3\nsim.t_end = -3\n"
        with pytest.raises(ConfigError, match="sim.t_end"):
            parse_config(text)


class TestSweepGrid:
    def test_default_grid_contents(self):
        ratios = SweepGrid(0.25, 1.5, 0.01).ratios()
        assert ratios.size == 126
        for landmark in (0.25, 0.5, 0.75, 1.0, 1.5):
            assert landmark in ratios

    def test_single_point_grid(self):
        ratios = SweepGrid(0.5, 0.5, 0.01).ratios()
        assert np.array_equal(ratios, [0.5])


def _random_phase(rng) -> PhaseFunction:
    shapes = list(PhaseShape)
    terms = []
    for _ in range(int(rng.integers(0, 3))):
        shape = shapes[int(rng.integers(len(shapes)))]
        amplitude = float(rng.uniform(-2.0, 2.0))
        if shape is PhaseShape.CONSTANT:
            terms.append(PhaseTerm(shape, amplitude))
        else:
            terms.append(PhaseTerm(shape, amplitude,
                                   float(rng.uniform(0.01, 5.0)),
                                   float(rng.uniform(-3.0, 3.0))))
    return PhaseFunction(tuple(terms))


def _random_pulse(rng, omega, with_carrier) -> PulseSpec:
    family = EnvelopeFamily.GAUSSIAN if rng.random() < 0.5 else EnvelopeFamily.SECH
    carrier = omega * float(rng.uniform(0.25, 1.5)) if with_carrier else omega
    return PulseSpec(
        Envelope(family, float(rng.uniform(0.0, 0.1)), float(rng.uniform(0.05, 1.0))),
        carrier=carrier,
        phase=_random_phase(rng),
    )


def _random_config(rng) -> RunConfig:
    mode = [Mode.SIMULATE, Mode.SWEEP, Mode.COMPARE, Mode.OPTIMIZE,
            Mode.PRESET][int(rng.integers(5))]
    workers = int(rng.integers(1, 8)) if rng.random() < 0.3 else None
    out = "out.csv" if rng.random() < 0.3 else None
    plot = "fig.svg" if rng.random() < 0.3 else None
    if mode is Mode.PRESET:
        return RunConfig(mode=mode, preset_id="fig3a", workers=workers,
                         out=out, plot=plot)

    lam = mode is not Mode.OPTIMIZE and rng.random() < 0.3
    omega_ab = float(rng.uniform(0.5, 2.0))
    sim = SimConfig(
        rel_tol=float(10.0 ** rng.uniform(-12, -6)),
        abs_tol=float(10.0 ** rng.uniform(-14, -9)),
        max_step=float(rng.uniform(0.01, 0.2)) if rng.random() < 0.5 else None,
        t_start=-40.0 if rng.random() < 0.3 else None,
        t_end=40.0 if rng.random() < 0.3 else None,
        record_stride=int(rng.integers(1, 10)),
    )
    common = dict(sim=sim, workers=workers, out=out, plot=plot)

    if lam:
        omega_ac = float(rng.uniform(0.5, 2.0))
        atom = AtomSpec.lambda_system(omega_ab, omega_ac)
        with_carrier = mode is Mode.SIMULATE
        drive = LambdaDrive(_random_pulse(rng, omega_ab, with_carrier),
                            _random_pulse(rng, omega_ac, with_carrier))
        pulse = None
    else:
        atom = AtomSpec.two_level(omega_ab)
        drive = None
        pulse = _random_pulse(rng, omega_ab, mode is Mode.SIMULATE)

    grid = None
    solver = Solver.EXACT
    optimize = None
    if mode in (Mode.SWEEP, Mode.COMPARE):
        start = float(rng.uniform(0.25, 0.8))
        grid = SweepGrid(start, start + float(rng.uniform(0.0, 0.7)),
                         float(rng.uniform(0.005, 0.1)))
        solver = Solver.BOTH if mode is Mode.COMPARE else \
            [Solver.EXACT, Solver.APPROX, Solver.BOTH][int(rng.integers(3))]
    elif mode is Mode.OPTIMIZE:
        optimize = OptimizeSpec(
            ratio=float(rng.uniform(0.25, 1.5)),
            shapes=(PhaseShape.TANH_FALL, PhaseShape.SECH),
            amplitudes=(math.pi / 2, float(rng.uniform(0.1, 3.0))),
            steepness_factors=(0.5, float(rng.uniform(1.0, 20.0))),
        )

    return RunConfig(mode=mode, atom=atom, pulse=pulse, drive=drive,
                     grid=grid, solver=solver, optimize=optimize, **common)


class TestRoundTrip:
    def test_serialize_parse_round_trip(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            cfg = _random_config(rng)
            text = serialize_config(cfg)
            assert parse_config(text) == cfg, text
