"""Frequency sweeps, enhancement metrics, and phase-shape search.

A sweep evaluates the asymptotic excited-state amplitude |C_a(inf)| on a grid
of carrier-to-transition frequency ratios nu/omega, with the exact integrator,
the approximate tip-angle solution, or both.  Points are independent, so they
can be dispatched to a process pool; results are always assembled in grid
order, which keeps outputs bit-identical regardless of worker count.

Enhancement and suppression between two sweeps are reported as ratios of
either the amplitudes or the populations (squared amplitudes); the objective
tag travels with the number since the two differ by orders of magnitude.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .dynamics import (
    DEFAULT_TAIL_FRACTION,
    SimConfig,
    asymptotic_population,
    integrate_tls,
)
from .errors import PhaseJumpError
from .lambda_system import LambdaDrive, integrate_lambda, lambda_analytic
from .pulses import AtomSpec, PhaseFunction, PhaseShape, PhaseTerm, PulseSpec
from .riccati import (
    DEFAULT_NODES_PER_CYCLE,
    amplitude_from_f,
    riccati_solution,
    tip_angle,
)

__all__ = [
    "Solver",
    "Objective",
    "SweepResult",
    "CandidateResult",
    "OptReport",
    "sweep_frequency",
    "sweep_frequency_lambda",
    "enhancement_factor",
    "optimize_phase",
    "default_phase_candidates",
]

# Ratio lookups and enhancement factors reject values below this; the
# quotient of two numbers at integrator noise level means nothing.
MIN_OBJECTIVE = 1e-12


class Solver(str, Enum):
    EXACT = "exact"
    APPROX = "approx"
    BOTH = "both"


class Objective(str, Enum):
    AMPLITUDE = "amplitude"
    POPULATION = "population"


@dataclass(frozen=True)
class SweepResult:
    """Asymptotic amplitudes over a ratio grid, plus solver metadata.

    Columns not requested (or failed points) hold NaN; per-point error
    messages are kept in ``errors`` ("" for clean points).
    """

    ratio_grid: np.ndarray
    pop_exact: np.ndarray
    pop_approx: np.ndarray
    errors: tuple[str, ...]
    solver: Solver
    preset_id: str = ""
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    n_per_cycle: int = DEFAULT_NODES_PER_CYCLE
    tail_fraction: float = DEFAULT_TAIL_FRACTION

    def __post_init__(self):
        grid = np.asarray(self.ratio_grid, dtype=float)
        if grid.size > 1 and not np.all(np.diff(grid) > 0):
            raise ValueError("SweepResult ratio_grid must be strictly increasing")
        for name in ("pop_exact", "pop_approx"):
            vals = getattr(self, name)
            finite = vals[np.isfinite(vals)]
            if finite.size and (finite.min() < 0 or finite.max() > 1):
                raise ValueError(f"SweepResult.{name} must lie in [0, 1]")


def _exact_population(pulse: PulseSpec, atom: AtomSpec, sim: SimConfig,
                      tail_fraction: float) -> float:
    return asymptotic_population(integrate_tls(pulse, atom, sim), tail_fraction)


def _approx_population(pulse: PulseSpec, atom: AtomSpec, n_per_cycle: int) -> float:
    series = riccati_solution(tip_angle(pulse, atom, n_per_cycle))
    return float(amplitude_from_f(series.f[-1]))


def _tls_point(task):
    """One sweep point; module-level so it pickles into worker processes."""
    index, ratio, pulse_template, atom, solver, sim, n_per_cycle, tail_fraction = task
    pulse = replace(pulse_template, carrier=ratio * atom.omega_ab)
    exact = approx = math.nan
    try:
        if solver in (Solver.EXACT, Solver.BOTH):
            exact = _exact_population(pulse, atom, sim, tail_fraction)
        if solver in (Solver.APPROX, Solver.BOTH):
            approx = _approx_population(pulse, atom, n_per_cycle)
        return index, exact, approx, ""
    except (PhaseJumpError, FloatingPointError, ValueError) as exc:
        return index, exact, approx, f"{type(exc).__name__}: {exc}"


def _lambda_point(task):
    index, ratio, drive_template, atom, solver, sim, n_per_cycle, tail_fraction = task
    drive = LambdaDrive(
        replace(drive_template.pulse1, carrier=ratio * atom.omega_ab),
        replace(drive_template.pulse2, carrier=ratio * atom.omega_ac),
    )
    exact = approx = math.nan
    try:
        if solver in (Solver.EXACT, Solver.BOTH):
            traj = integrate_lambda(drive, atom, sim)
            exact = asymptotic_population(traj, tail_fraction)
        if solver in (Solver.APPROX, Solver.BOTH):
            analytic = lambda_analytic(drive, atom, n_per_cycle)
            approx = float(analytic.amplitude_a[-1])
        return index, exact, approx, ""
    except (PhaseJumpError, FloatingPointError, ValueError) as exc:
        return index, exact, approx, f"{type(exc).__name__}: {exc}"


def _run_points(point_fn, tasks, workers: int):
    n = len(tasks)
    exact = np.full(n, math.nan)
    approx = np.full(n, math.nan)
    errors = [""] * n
    if workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(point_fn, tasks)
            for index, ex, ap, err in results:
                exact[index], approx[index], errors[index] = ex, ap, err
    else:
        for task in tasks:
            index, ex, ap, err = point_fn(task)
            exact[index], approx[index], errors[index] = ex, ap, err
    return exact, approx, tuple(errors)


def _check_ratios(ratios) -> np.ndarray:
    grid = np.asarray(list(ratios), dtype=float)
    if grid.size == 0:
        raise ValueError("ratio grid must be nonempty")
    if not np.all(grid > 0):
        raise ValueError("all ratios must be > 0")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("ratio grid must be strictly increasing")
    return grid


def sweep_frequency(
    pulse_template: PulseSpec,
    atom: AtomSpec,
    ratios,
    solver: Solver = Solver.EXACT,
    *,
    sim: SimConfig = SimConfig(),
    n_per_cycle: int = DEFAULT_NODES_PER_CYCLE,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    workers: int = 1,
    preset_id: str = "",
) -> SweepResult:
    """Asymptotic |C_a(inf)| of a two-level atom over a ratio grid.

    For each ratio r the template's carrier is replaced by r * omega and the
    selected solver(s) run; failures mark their point NaN with the message in
    ``errors`` instead of aborting the sweep.  Same inputs, same outputs,
    bit for bit, independent of ``workers``.
    """
    grid = _check_ratios(ratios)
    tasks = [
        (i, float(r), pulse_template, atom, solver, sim, n_per_cycle, tail_fraction)
        for i, r in enumerate(grid)
    ]
    exact, approx, errors = _run_points(_tls_point, tasks, workers)
    return SweepResult(
        ratio_grid=grid, pop_exact=exact, pop_approx=approx, errors=errors,
        solver=solver, preset_id=preset_id, rel_tol=sim.rel_tol,
        abs_tol=sim.abs_tol, n_per_cycle=n_per_cycle, tail_fraction=tail_fraction,
    )


def sweep_frequency_lambda(
    drive_template: LambdaDrive,
    atom: AtomSpec,
    ratios,
    solver: Solver = Solver.EXACT,
    *,
    sim: SimConfig = SimConfig(),
    n_per_cycle: int = DEFAULT_NODES_PER_CYCLE,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    workers: int = 1,
    preset_id: str = "",
) -> SweepResult:
    """Lambda-system analogue of :func:`sweep_frequency`.

    Each ratio r sets carrier j to r * omega_j, so equal transition
    frequencies get a common carrier.
    """
    grid = _check_ratios(ratios)
    tasks = [
        (i, float(r), drive_template, atom, solver, sim, n_per_cycle, tail_fraction)
        for i, r in enumerate(grid)
    ]
    exact, approx, errors = _run_points(_lambda_point, tasks, workers)
    return SweepResult(
        ratio_grid=grid, pop_exact=exact, pop_approx=approx, errors=errors,
        solver=solver, preset_id=preset_id, rel_tol=sim.rel_tol,
        abs_tol=sim.abs_tol, n_per_cycle=n_per_cycle, tail_fraction=tail_fraction,
    )


def _lookup_value(result: SweepResult, ratio: float) -> float:
    grid = result.ratio_grid
    idx = int(np.argmin(np.abs(grid - ratio)))
    if grid.size > 1:
        tolerance = 0.5 * float(np.min(np.diff(grid)))
    else:
        tolerance = 1e-9 * max(1.0, abs(ratio))
    if abs(float(grid[idx]) - ratio) > tolerance * (1 + 1e-12):
        raise ValueError(
            f"ratio {ratio} not on the sweep grid (nearest {grid[idx]}, "
            f"tolerance {tolerance})"
        )
    value = float(result.pop_exact[idx])
    if not math.isfinite(value):
        value = float(result.pop_approx[idx])
    if not math.isfinite(value):
        raise ValueError(f"sweep has no finite value at ratio {grid[idx]}")
    return value


def enhancement_factor(
    a: SweepResult,
    b: SweepResult,
    ratio: float,
    objective: Objective = Objective.AMPLITUDE,
) -> float:
    """Ratio of sweep a to sweep b at the given grid ratio.

    POPULATION squares the amplitudes before dividing.  Values below 1e-12
    are rejected as ill-conditioned.
    """
    va = _lookup_value(a, ratio)
    vb = _lookup_value(b, ratio)
    if objective is Objective.POPULATION:
        va, vb = va * va, vb * vb
    if va < MIN_OBJECTIVE or vb < MIN_OBJECTIVE:
        raise ValueError(
            f"enhancement factor ill-conditioned: values {va:.3e}, {vb:.3e} "
            f"below {MIN_OBJECTIVE:.0e}"
        )
    return va / vb


@dataclass(frozen=True)
class CandidateResult:
    """One phase-function candidate and its achieved amplitude (NaN on failure)."""

    phase: PhaseFunction
    amplitude: float
    error: str = ""


@dataclass(frozen=True)
class OptReport:
    """Ranked phase-candidate evaluations against the no-jump baseline."""

    ratio: float
    objective: Objective
    baseline_amplitude: float
    candidates: tuple[CandidateResult, ...]
    best_index: int

    @property
    def best(self) -> CandidateResult:
        return self.candidates[self.best_index]

    def enhancement(self, objective: Objective | None = None) -> float:
        """Best candidate over baseline, in the given (or report) objective."""
        objective = self.objective if objective is None else objective
        top, base = self.best.amplitude, self.baseline_amplitude
        if objective is Objective.POPULATION:
            top, base = top * top, base * base
        if base == 0.0:
            return math.inf if top > 0 else math.nan
        return top / base

    @property
    def enhancement_amplitude(self) -> float:
        return self.enhancement(Objective.AMPLITUDE)

    @property
    def enhancement_population(self) -> float:
        return self.enhancement(Objective.POPULATION)


def _candidate_point(task):
    index, phase, pulse_template, atom, ratio, sim, tail_fraction = task
    pulse = replace(
        pulse_template, carrier=ratio * atom.omega_ab, phase=phase
    )
    try:
        return index, _exact_population(pulse, atom, sim, tail_fraction), ""
    except (PhaseJumpError, FloatingPointError, ValueError) as exc:
        return index, math.nan, f"{type(exc).__name__}: {exc}"


def optimize_phase(
    pulse_template: PulseSpec,
    atom: AtomSpec,
    ratio: float,
    candidates,
    *,
    objective: Objective = Objective.AMPLITUDE,
    sim: SimConfig = SimConfig(),
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    workers: int = 1,
) -> OptReport:
    """Evaluate phase-function candidates with the exact solver at one ratio.

    The report ranks candidates by the chosen objective (amplitude and
    population rank identically since squaring is monotone), breaks ties by
    lowest index, and records the enhancement over the phi = 0 baseline.
    Per-candidate failures are recorded and excluded from the argmax.
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("optimize_phase needs at least one candidate")
    if not ratio > 0:
        raise ValueError(f"ratio must be > 0, got {ratio}")

    tasks = [
        (i, phase, pulse_template, atom, ratio, sim, tail_fraction)
        for i, phase in enumerate([PhaseFunction()] + candidates)
    ]
    n = len(tasks)
    amps = np.full(n, math.nan)
    errs = [""] * n
    if workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for index, amp, err in pool.map(_candidate_point, tasks):
                amps[index], errs[index] = amp, err
    else:
        for task in tasks:
            index, amp, err = _candidate_point(task)
            amps[index], errs[index] = amp, err

    baseline = float(amps[0])
    results = tuple(
        CandidateResult(phase=phase, amplitude=float(amps[i + 1]), error=errs[i + 1])
        for i, phase in enumerate(candidates)
    )
    scores = amps[1:].copy()
    if objective is Objective.POPULATION:
        scores = scores * scores
    if not np.any(np.isfinite(scores)):
        raise PhaseJumpError("all optimize_phase candidates failed")
    # argmax over finite scores; ties resolve to the lowest index.
    scores = np.where(np.isfinite(scores), scores, -math.inf)
    best_index = int(np.argmax(scores))
    return OptReport(
        ratio=ratio,
        objective=objective,
        baseline_amplitude=baseline,
        candidates=results,
        best_index=best_index,
    )


DEFAULT_CANDIDATE_SHAPES = (
    PhaseShape.TANH_RISE,
    PhaseShape.TANH_FALL,
    PhaseShape.SECH,
    PhaseShape.SECH_SQUARED,
)
DEFAULT_CANDIDATE_AMPLITUDES = (math.pi / 2,)
DEFAULT_STEEPNESS_FACTORS = (0.5, 1.0, 2.0, 5.0, 10.0, 20.0)


def default_phase_candidates(
    width: float,
    shapes=DEFAULT_CANDIDATE_SHAPES,
    amplitudes=DEFAULT_CANDIDATE_AMPLITUDES,
    steepness_factors=DEFAULT_STEEPNESS_FACTORS,
) -> list[PhaseFunction]:
    """Single-transient candidate grid with steepness in multiples of ``width``.

    The families and pi/2 amplitude scale mirror the bundled presets; the
    steepness factors span smooth to nearly step-like jumps.
    """
    if not width > 0:
        raise ValueError(f"width must be > 0, got {width}")
    return [
        PhaseFunction((PhaseTerm(shape, amp, factor * width),))
        for shape in shapes
        for amp in amplitudes
        for factor in steepness_factors
    ]
