"""CSV serialization with deterministic, byte-stable formatting.

Column contracts:

* Trajectory: ``t,re_ca,im_ca,re_cb,im_cb[,re_cc,im_cc],pop_a,norm``
  (the lambda columns re_cc/im_cc appear only for three-level runs);
  ``pop_a`` is the amplitude magnitude |C_a(t)|, ``norm`` is sum(|C_i|^2).
* SweepResult: ``nu_over_omega,pop_exact,pop_approx,rel_dev`` where
  ``rel_dev = |pop_approx - pop_exact| / pop_exact``; columns a solver did
  not produce hold nan.
* OptReport: one row per candidate,
  ``index,phase,objective_amplitude,objective_population,baseline_amplitude,
  enhancement_amplitude,enhancement_population,best,error``.

Values print with 17 significant digits, lines end with a newline, and two
runs of the same inputs on the same build produce byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dynamics import Trajectory
from .pulses import PhaseFunction, PhaseShape
from .sweep import OptReport, SweepResult

__all__ = [
    "Series",
    "fmt",
    "write_csv",
    "write_trajectory_csv",
    "write_sweep_csv",
    "write_optreport_csv",
    "phase_label",
    "trajectory_series",
    "sweep_series",
]


@dataclass(frozen=True)
class Series:
    """One labeled line of (x, y) points, shared by both plot backends."""

    label: str
    x: np.ndarray
    y: np.ndarray


def fmt(value: float) -> str:
    """17-significant-digit text, enough to round-trip a double exactly."""
    return "%.17g" % value


def phase_label(phase: PhaseFunction) -> str:
    """Compact single-token description of a phase function (no commas)."""
    if not phase.terms:
        return "none"
    parts = []
    for term in phase.terms:
        if term.shape is PhaseShape.CONSTANT:
            parts.append(f"constant(a={fmt(term.amplitude)})")
        else:
            parts.append(
                f"{term.shape.value}(a={fmt(term.amplitude)};"
                f"k={fmt(term.steepness)};t0={fmt(term.center)})"
            )
    return "+".join(parts)


def _write_lines(lines: list[str], path) -> None:
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def write_trajectory_csv(traj: Trajectory, path) -> None:
    has_c = traj.c_c is not None
    header = "t,re_ca,im_ca,re_cb,im_cb"
    if has_c:
        header += ",re_cc,im_cc"
    header += ",pop_a,norm"
    lines = [header]
    pop = traj.pop_a
    norm = traj.norm
    for i, t in enumerate(traj.times):
        cells = [
            fmt(t),
            fmt(traj.c_a[i].real), fmt(traj.c_a[i].imag),
            fmt(traj.c_b[i].real), fmt(traj.c_b[i].imag),
        ]
        if has_c:
            cells += [fmt(traj.c_c[i].real), fmt(traj.c_c[i].imag)]
        cells += [fmt(pop[i]), fmt(norm[i])]
        lines.append(",".join(cells))
    _write_lines(lines, path)


def _rel_dev(exact: float, approx: float) -> float:
    if not (math.isfinite(exact) and math.isfinite(approx)):
        return math.nan
    if exact == 0.0:
        return math.nan if approx == 0.0 else math.inf
    return abs(approx - exact) / abs(exact)


def write_sweep_csv(result: SweepResult, path) -> None:
    lines = ["nu_over_omega,pop_exact,pop_approx,rel_dev"]
    for i, ratio in enumerate(result.ratio_grid):
        exact = float(result.pop_exact[i])
        approx = float(result.pop_approx[i])
        lines.append(
            ",".join([fmt(ratio), fmt(exact), fmt(approx), fmt(_rel_dev(exact, approx))])
        )
    _write_lines(lines, path)


def write_optreport_csv(report: OptReport, path) -> None:
    lines = [
        "index,phase,objective_amplitude,objective_population,"
        "baseline_amplitude,enhancement_amplitude,enhancement_population,"
        "best,error"
    ]
    base = report.baseline_amplitude

    def safe_ratio(num: float, den: float) -> float:
        if not (math.isfinite(num) and math.isfinite(den)) or den == 0.0:
            return math.inf if (den == 0.0 and num > 0) else math.nan
        return num / den

    for i, cand in enumerate(report.candidates):
        amp = cand.amplitude
        lines.append(",".join([
            str(i),
            phase_label(cand.phase),
            fmt(amp),
            fmt(amp * amp),
            fmt(base),
            fmt(safe_ratio(amp, base)),
            fmt(safe_ratio(amp * amp, base * base)),
            "1" if i == report.best_index else "0",
            cand.error.replace(",", ";"),
        ]))
    _write_lines(lines, path)


def write_csv(result, path) -> None:
    """Serialize a Trajectory, SweepResult, or OptReport to CSV at ``path``."""
    if isinstance(result, Trajectory):
        write_trajectory_csv(result, path)
    elif isinstance(result, SweepResult):
        write_sweep_csv(result, path)
    elif isinstance(result, OptReport):
        write_optreport_csv(result, path)
    else:
        raise TypeError(f"no CSV writer for {type(result).__name__}")


def trajectory_series(traj: Trajectory) -> list[Series]:
    """Plot series for a trajectory: |C_a|(t), plus |C_c|(t) for lambda runs."""
    series = [Series("|C_a(t)|", traj.times, traj.pop_a)]
    if traj.c_c is not None:
        series.append(Series("|C_c(t)|", traj.times, np.abs(traj.c_c)))
    return series


def sweep_series(result: SweepResult) -> list[Series]:
    """Plot series for a sweep: finite solver columns over the ratio grid."""
    series = []
    for label, values in (("exact", result.pop_exact), ("approx", result.pop_approx)):
        mask = np.isfinite(values)
        if mask.any():
            series.append(Series(label, result.ratio_grid[mask], values[mask]))
    return series
