"""Run configuration: flat key-value documents with a strict schema.

A run is described by lines of ``key = value`` with dotted section keys, for
example::

    mode = simulate
    atom.kind = two_level
    atom.omega_ab = 1.0
    envelope.family = gaussian
    envelope.amplitude = 0.04375
    envelope.width = 0.33125
    carrier.ratio = 0.75
    phase.1.shape = tanh_fall
    phase.1.amplitude = 1.5707963267948966
    phase.1.steepness = 0.33125

``#`` starts a comment.  Unknown keys are rejected, every numeric value is
validated against its constraint at parse time, and all defaults are applied
during parsing so the returned :class:`RunConfig` is fully explicit.
:func:`serialize_config` emits the canonical document for a RunConfig;
``parse_config(serialize_config(cfg))`` reproduces ``cfg`` exactly.

Window and step-cap defaults (``sim.max_step``, ``sim.t_start``,
``sim.t_end``) are input-dependent, so they serialize as ``auto`` and are
resolved by the solvers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .dynamics import SimConfig
from .errors import ConfigError
from .lambda_system import LambdaDrive
from .pulses import (
    AtomKind,
    AtomSpec,
    Envelope,
    EnvelopeFamily,
    PhaseFunction,
    PhaseShape,
    PhaseTerm,
    PulseSpec,
)
from .sweep import (
    DEFAULT_CANDIDATE_AMPLITUDES,
    DEFAULT_CANDIDATE_SHAPES,
    DEFAULT_STEEPNESS_FACTORS,
    Solver,
)

__all__ = [
    "Mode",
    "SweepGrid",
    "OptimizeSpec",
    "RunConfig",
    "parse_config",
    "serialize_config",
    "MAX_PHASE_TERMS",
]

MAX_PHASE_TERMS = 9

# Default sweep grid covers every bundled scan's x axis.
DEFAULT_GRID_START = 0.25
DEFAULT_GRID_STOP = 1.5
DEFAULT_GRID_STEP = 0.01


class Mode(str, Enum):
    SIMULATE = "simulate"
    SWEEP = "sweep"
    OPTIMIZE = "optimize"
    COMPARE = "compare"
    PRESET = "preset"


@dataclass(frozen=True)
class SweepGrid:
    """Ratio grid start:stop:step; values are rounded to 12 decimals."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not self.start > 0:
            raise ValueError(f"SweepGrid.start must be > 0, got {self.start}")
        if not self.stop >= self.start:
            raise ValueError("SweepGrid requires stop >= start")
        if not self.step > 0:
            raise ValueError(f"SweepGrid.step must be > 0, got {self.step}")

    def ratios(self) -> np.ndarray:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9))
        return np.round(self.start + self.step * np.arange(n + 1), 12)


@dataclass(frozen=True)
class OptimizeSpec:
    """Candidate grid for the phase-shape search at one frequency ratio."""

    ratio: float
    shapes: tuple[PhaseShape, ...] = DEFAULT_CANDIDATE_SHAPES
    amplitudes: tuple[float, ...] = DEFAULT_CANDIDATE_AMPLITUDES
    steepness_factors: tuple[float, ...] = DEFAULT_STEEPNESS_FACTORS

    def __post_init__(self):
        if not self.ratio > 0:
            raise ValueError(f"OptimizeSpec.ratio must be > 0, got {self.ratio}")
        if not self.shapes or not self.amplitudes or not self.steepness_factors:
            raise ValueError("OptimizeSpec candidate lists must be nonempty")
        if any(not f > 0 for f in self.steepness_factors):
            raise ValueError("OptimizeSpec.steepness_factors must all be > 0")


@dataclass(frozen=True)
class RunConfig:
    """A fully explicit run description; see the module docstring."""

    mode: Mode
    atom: AtomSpec | None = None
    pulse: PulseSpec | None = None
    drive: LambdaDrive | None = None
    sim: SimConfig = field(default_factory=SimConfig)
    grid: SweepGrid | None = None
    solver: Solver = Solver.EXACT
    optimize: OptimizeSpec | None = None
    preset_id: str | None = None
    workers: int | None = None
    out: str | None = None
    plot: str | None = None


# ---------------------------------------------------------------------------
# tokenizer


def _tokenize(text: str) -> dict[str, tuple[str, int]]:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        hash_pos = raw.find("#")
        line = raw if hash_pos < 0 else raw[:hash_pos]
        if not line.strip():
            continue
        eq = line.find("=")
        if eq < 0:
            col = len(line) - len(line.lstrip()) + 1
            raise ConfigError("expected 'key = value'", line=lineno, column=col)
        key = line[:eq].strip()
        value = line[eq + 1:].strip()
        if not key:
            raise ConfigError("missing key before '='", line=lineno, column=1)
        bad = next((c for c in key if not (c.isalnum() or c in "._-")), None)
        if bad is not None:
            col = line.index(bad) + 1
            raise ConfigError(f"invalid character {bad!r} in key", line=lineno, column=col)
        if not value:
            raise ConfigError("missing value", line=lineno, column=eq + 2, key=key)
        if key in entries:
            raise ConfigError(
                f"duplicate key (first set on line {entries[key][1]})",
                line=lineno, key=key,
            )
        entries[key] = (value, lineno)
    return entries


class _Reader:
    """Typed access to tokenized entries; tracks consumption for strictness."""

    def __init__(self, entries: dict[str, tuple[str, int]]):
        self.entries = entries
        self.used: set[str] = set()

    def has(self, key: str) -> bool:
        return key in self.entries

    def raw(self, key: str):
        self.used.add(key)
        return self.entries[key][0]

    def _take(self, key: str, default, required: bool):
        if key in self.entries:
            self.used.add(key)
            return self.entries[key]
        if required:
            raise ConfigError("required key is missing", key=key)
        return (default, None)

    def string(self, key: str, default: str | None = None, required: bool = False):
        value, _ = self._take(key, default, required)
        return value

    def number(self, key: str, default=None, required: bool = False,
               minimum=None, exclusive_minimum=None, allow_auto: bool = False):
        value, line = self._take(key, default, required)
        if value is None or not isinstance(value, str):
            return value
        if allow_auto and value == "auto":
            return None
        try:
            out = float(value)
        except ValueError:
            raise ConfigError(f"not a number: {value!r}", key=key, line=line) from None
        if not math.isfinite(out):
            raise ConfigError("must be finite", key=key, line=line)
        if minimum is not None and out < minimum:
            raise ConfigError(f"must be >= {minimum}, got {out}", key=key, line=line)
        if exclusive_minimum is not None and not out > exclusive_minimum:
            raise ConfigError(
                f"must be > {exclusive_minimum}, got {out}", key=key, line=line
            )
        return out

    def integer(self, key: str, default=None, required: bool = False, minimum=None):
        value, line = self._take(key, default, required)
        if value is None or not isinstance(value, str):
            return value
        try:
            out = int(value)
        except ValueError:
            raise ConfigError(f"not an integer: {value!r}", key=key, line=line) from None
        if minimum is not None and out < minimum:
            raise ConfigError(f"must be >= {minimum}, got {out}", key=key, line=line)
        return out

    def choice(self, key: str, enum_cls, default=None, required: bool = False):
        value, line = self._take(key, default, required)
        if value is None or not isinstance(value, str):
            return value
        try:
            return enum_cls(value)
        except ValueError:
            options = ", ".join(m.value for m in enum_cls)
            raise ConfigError(
                f"must be one of: {options}; got {value!r}", key=key, line=line
            ) from None

    def csv_numbers(self, key: str, default: tuple[float, ...]):
        if key not in self.entries:
            return default
        value, line = self.entries[key]
        self.used.add(key)
        out = []
        for part in value.split(","):
            part = part.strip()
            try:
                num = float(part)
            except ValueError:
                raise ConfigError(
                    f"not a number in list: {part!r}", key=key, line=line
                ) from None
            out.append(num)
        if not out:
            raise ConfigError("list must be nonempty", key=key, line=line)
        return tuple(out)

    def csv_shapes(self, key: str, default: tuple[PhaseShape, ...]):
        if key not in self.entries:
            return default
        value, line = self.entries[key]
        self.used.add(key)
        out = []
        for part in value.split(","):
            part = part.strip()
            try:
                out.append(PhaseShape(part))
            except ValueError:
                options = ", ".join(m.value for m in PhaseShape)
                raise ConfigError(
                    f"unknown shape {part!r}; options: {options}", key=key, line=line
                ) from None
        if not out:
            raise ConfigError("list must be nonempty", key=key, line=line)
        return tuple(out)

    def reject_unused(self):
        unused = sorted(set(self.entries) - self.used)
        if unused:
            key = unused[0]
            raise ConfigError(
                "unknown key", key=key, line=self.entries[key][1]
            )


# ---------------------------------------------------------------------------
# section builders


def _build_phase(reader: _Reader, prefix: str) -> PhaseFunction:
    terms = []
    for n in range(1, MAX_PHASE_TERMS + 1):
        shape_key = f"{prefix}.{n}.shape"
        if not reader.has(shape_key):
            # Terms must be numbered consecutively from 1; a gap followed by
            # more term keys is caught by the unknown-key check at the end.
            break
        shape = reader.choice(shape_key, PhaseShape, required=True)
        amplitude = reader.number(f"{prefix}.{n}.amplitude", required=True)
        center = reader.number(f"{prefix}.{n}.center", default=0.0)
        if shape is PhaseShape.CONSTANT:
            if reader.has(f"{prefix}.{n}.steepness"):
                raise ConfigError(
                    "constant terms take no steepness",
                    key=f"{prefix}.{n}.steepness",
                )
            terms.append(PhaseTerm(shape, amplitude))
        else:
            steepness = reader.number(
                f"{prefix}.{n}.steepness", required=True, exclusive_minimum=0.0
            )
            terms.append(PhaseTerm(shape, amplitude, steepness, center))
    return PhaseFunction(tuple(terms))


def _build_pulse(reader: _Reader, prefix: str, omega: float,
                 carrier_required: bool) -> PulseSpec:
    family = reader.choice(f"{prefix}envelope.family", EnvelopeFamily, required=True)
    amplitude = reader.number(f"{prefix}envelope.amplitude", required=True, minimum=0.0)
    width = reader.number(f"{prefix}envelope.width", required=True, exclusive_minimum=0.0)
    if carrier_required:
        ratio = reader.number(
            f"{prefix}carrier.ratio", required=True, exclusive_minimum=0.0
        )
        carrier = ratio * omega
    else:
        if reader.has(f"{prefix}carrier.ratio"):
            raise ConfigError(
                "carrier.ratio is set by the sweep grid in this mode",
                key=f"{prefix}carrier.ratio",
            )
        carrier = omega  # placeholder; sweeps replace it per point
    phase = _build_phase(reader, f"{prefix}phase")
    return PulseSpec(Envelope(family, amplitude, width), carrier=carrier, phase=phase)


def _build_sim(reader: _Reader) -> SimConfig:
    t_start = reader.number("sim.t_start", default="auto", allow_auto=True)
    t_end = reader.number("sim.t_end", default="auto", allow_auto=True)
    if t_start is not None and t_end is not None and not t_start < t_end:
        raise ConfigError("must be > sim.t_start", key="sim.t_end")
    return SimConfig(
        rel_tol=reader.number("sim.rel_tol", default=1e-10, exclusive_minimum=0.0),
        abs_tol=reader.number("sim.abs_tol", default=1e-12, exclusive_minimum=0.0),
        max_step=reader.number(
            "sim.max_step", default="auto", exclusive_minimum=0.0, allow_auto=True
        ),
        t_start=t_start,
        t_end=t_end,
        record_stride=reader.integer("sim.record_stride", default=1, minimum=1),
    )


def _build_atom(reader: _Reader) -> AtomSpec:
    kind = reader.choice("atom.kind", AtomKind, default=AtomKind.TWO_LEVEL.value)
    omega_ab = reader.number("atom.omega_ab", default=1.0, exclusive_minimum=0.0)
    if kind is AtomKind.LAMBDA:
        omega_ac = reader.number("atom.omega_ac", required=True, exclusive_minimum=0.0)
        return AtomSpec(kind, omega_ab, omega_ac)
    if reader.has("atom.omega_ac"):
        raise ConfigError("only lambda atoms take omega_ac", key="atom.omega_ac")
    return AtomSpec(kind, omega_ab)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document into a RunConfig.

    Raises :class:`ConfigError` with line/column for malformed syntax, or
    with the offending key and the violated constraint for semantic errors.
    Defaults are filled in, so the result is fully explicit.
    """
    reader = _Reader(_tokenize(text))
    if not reader.has("mode"):
        raise ConfigError("mode is required")
    mode = reader.choice("mode", Mode, required=True)

    workers = reader.integer("workers", default=None, minimum=1)
    out = reader.string("out")
    plot = reader.string("plot")

    if mode is Mode.PRESET:
        preset_id = reader.string("preset.id", required=True)
        reader.reject_unused()
        return RunConfig(mode=mode, preset_id=preset_id, workers=workers,
                         out=out, plot=plot)

    atom = _build_atom(reader)
    sim = _build_sim(reader)
    carrier_required = mode in (Mode.SIMULATE,)

    pulse = drive = None
    if atom.kind is AtomKind.LAMBDA:
        if mode is Mode.OPTIMIZE:
            raise ConfigError(
                "optimize mode supports two-level atoms only", key="atom.kind"
            )
        drive = LambdaDrive(
            _build_pulse(reader, "pulse1.", atom.omega_ab, carrier_required),
            _build_pulse(reader, "pulse2.", atom.omega_ac, carrier_required),
        )
    else:
        pulse = _build_pulse(reader, "", atom.omega_ab, carrier_required)

    grid = None
    solver = Solver.EXACT
    optimize = None
    if mode in (Mode.SWEEP, Mode.COMPARE):
        start = reader.number(
            "sweep.start", default=DEFAULT_GRID_START, exclusive_minimum=0.0
        )
        stop = reader.number("sweep.stop", default=DEFAULT_GRID_STOP)
        step = reader.number(
            "sweep.step", default=DEFAULT_GRID_STEP, exclusive_minimum=0.0
        )
        if stop < start:
            raise ConfigError("must be >= sweep.start", key="sweep.stop")
        grid = SweepGrid(start=start, stop=stop, step=step)
        if mode is Mode.COMPARE:
            if reader.has("sweep.solver"):
                raise ConfigError(
                    "compare mode always runs both solvers", key="sweep.solver"
                )
            solver = Solver.BOTH
        else:
            solver = reader.choice(
                "sweep.solver", Solver, default=Solver.EXACT.value
            )
    elif mode is Mode.OPTIMIZE:
        factors = reader.csv_numbers(
            "optimize.steepness_factors", DEFAULT_STEEPNESS_FACTORS
        )
        if any(not f > 0 for f in factors):
            raise ConfigError("must all be > 0", key="optimize.steepness_factors")
        optimize = OptimizeSpec(
            ratio=reader.number("optimize.ratio", required=True, exclusive_minimum=0.0),
            shapes=reader.csv_shapes("optimize.shapes", DEFAULT_CANDIDATE_SHAPES),
            amplitudes=reader.csv_numbers(
                "optimize.amplitudes", DEFAULT_CANDIDATE_AMPLITUDES
            ),
            steepness_factors=factors,
        )

    reader.reject_unused()
    return RunConfig(
        mode=mode, atom=atom, pulse=pulse, drive=drive, sim=sim, grid=grid,
        solver=solver, optimize=optimize, workers=workers, out=out, plot=plot,
    )


# ---------------------------------------------------------------------------
# serialization


def _num(x: float) -> str:
    return repr(float(x))


def _emit_phase(lines: list[str], prefix: str, phase: PhaseFunction):
    for n, term in enumerate(phase.terms, start=1):
        lines.append(f"{prefix}.{n}.shape = {term.shape.value}")
        lines.append(f"{prefix}.{n}.amplitude = {_num(term.amplitude)}")
        if term.shape is not PhaseShape.CONSTANT:
            lines.append(f"{prefix}.{n}.steepness = {_num(term.steepness)}")
            lines.append(f"{prefix}.{n}.center = {_num(term.center)}")


def _emit_pulse(lines: list[str], prefix: str, pulse: PulseSpec, omega: float,
                with_carrier: bool):
    lines.append(f"{prefix}envelope.family = {pulse.envelope.family.value}")
    lines.append(f"{prefix}envelope.amplitude = {_num(pulse.envelope.amplitude)}")
    lines.append(f"{prefix}envelope.width = {_num(pulse.envelope.width)}")
    if with_carrier:
        lines.append(f"{prefix}carrier.ratio = {_num(pulse.carrier / omega)}")
    _emit_phase(lines, f"{prefix}phase", pulse.phase)


def serialize_config(cfg: RunConfig) -> str:
    """Emit the canonical document; parse_config inverts it exactly."""
    lines = [f"mode = {cfg.mode.value}"]
    if cfg.workers is not None:
        lines.append(f"workers = {cfg.workers}")
    if cfg.out is not None:
        lines.append(f"out = {cfg.out}")
    if cfg.plot is not None:
        lines.append(f"plot = {cfg.plot}")

    if cfg.mode is Mode.PRESET:
        lines.append(f"preset.id = {cfg.preset_id}")
        return "\n".join(lines) + "\n"

    atom = cfg.atom
    lines.append(f"atom.kind = {atom.kind.value}")
    lines.append(f"atom.omega_ab = {_num(atom.omega_ab)}")
    if atom.kind is AtomKind.LAMBDA:
        lines.append(f"atom.omega_ac = {_num(atom.omega_ac)}")

    with_carrier = cfg.mode is Mode.SIMULATE
    if atom.kind is AtomKind.LAMBDA:
        _emit_pulse(lines, "pulse1.", cfg.drive.pulse1, atom.omega_ab, with_carrier)
        _emit_pulse(lines, "pulse2.", cfg.drive.pulse2, atom.omega_ac, with_carrier)
    else:
        _emit_pulse(lines, "", cfg.pulse, atom.omega_ab, with_carrier)

    sim = cfg.sim
    lines.append(f"sim.rel_tol = {_num(sim.rel_tol)}")
    lines.append(f"sim.abs_tol = {_num(sim.abs_tol)}")
    lines.append(f"sim.max_step = {'auto' if sim.max_step is None else _num(sim.max_step)}")
    lines.append(f"sim.t_start = {'auto' if sim.t_start is None else _num(sim.t_start)}")
    lines.append(f"sim.t_end = {'auto' if sim.t_end is None else _num(sim.t_end)}")
    lines.append(f"sim.record_stride = {sim.record_stride}")

    if cfg.mode in (Mode.SWEEP, Mode.COMPARE):
        lines.append(f"sweep.start = {_num(cfg.grid.start)}")
        lines.append(f"sweep.stop = {_num(cfg.grid.stop)}")
        lines.append(f"sweep.step = {_num(cfg.grid.step)}")
        if cfg.mode is Mode.SWEEP:
            lines.append(f"sweep.solver = {cfg.solver.value}")
    elif cfg.mode is Mode.OPTIMIZE:
        opt = cfg.optimize
        lines.append(f"optimize.ratio = {_num(opt.ratio)}")
        lines.append("optimize.shapes = " + ",".join(s.value for s in opt.shapes))
        lines.append("optimize.amplitudes = " + ",".join(_num(a) for a in opt.amplitudes))
        lines.append(
            "optimize.steepness_factors = "
            + ",".join(_num(f) for f in opt.steepness_factors)
        )
    return "\n".join(lines) + "\n"
