"""Exact and approximate dynamics of a three-level lambda system.

Two drives couple a shared upper level |a> to the lower levels |b> and |c>:

    dC_a/dt = i Omega_1(t) C_b + i Omega_2(t) C_c
    dC_b/dt = i conj(Omega_1(t)) C_a
    dC_c/dt = i conj(Omega_2(t)) C_a

from (C_a, C_b, C_c) = (0, 1, 0), with per-transition couplings
Omega_j(t) = env_j(t) cos(nu_j t) exp(i omega_j t) (no rotating-wave
approximation, decay neglected).

The approximate solution generalizes the two-level tip-angle scheme to the
amplitude ratios f = C_a/C_b and g = C_c/C_b.  With tip angles
theta_j = integral Omega_j and first-order seeds

    f1 = i theta_1,
    g1 = -integral conj(Omega_2) theta_1,

the linearized equations

    f' + 2 i conj(theta_1') f1 f = i theta_1' + i theta_2' g1 + i conj(theta_1') f1^2
    g' +   i conj(theta_1') f1 g = i conj(theta_2') f1

are solved by integrating factors a(t) = integral 2 i conj(theta_1') f1 and
c(t) = integral i conj(theta_1') f1.  The ``literal_exponents`` switch swaps
in the unintegrated pointwise exponents for comparison; the integrated form
is the one that actually solves the linear equations and is the default.

The excited amplitude is |C_a| = |f| / sqrt(1 + |f|^2 + |g|^2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import SimConfig, Trajectory, _solve, resolve_window
from .errors import ExponentOverflowError
from .pulses import (
    AtomKind,
    AtomSpec,
    PulseSpec,
    _scalar_envelope_fn,
    _scalar_phase_fn,
    support_window,
    transition_coupling,
)
from .riccati import (
    DEFAULT_NODES_PER_CYCLE,
    _EXP_GUARD,
    cumulative_quadrature,
    uniform_grid,
)

__all__ = [
    "LambdaDrive",
    "LambdaAnalytic",
    "integrate_lambda",
    "lambda_analytic",
]


@dataclass(frozen=True)
class LambdaDrive:
    """The two drives of a lambda system: pulse1 on a-b, pulse2 on a-c."""

    pulse1: PulseSpec
    pulse2: PulseSpec


@dataclass(frozen=True)
class LambdaAnalytic:
    """Approximate ratio solutions and their building blocks on a uniform grid."""

    times: np.ndarray
    theta1: np.ndarray
    theta2: np.ndarray
    f1: np.ndarray
    g1: np.ndarray
    f: np.ndarray
    g: np.ndarray

    @property
    def amplitude_a(self) -> np.ndarray:
        """|C_a| = |f| / sqrt(1 + |f|^2 + |g|^2) per sample."""
        return np.abs(self.f) / np.sqrt(1.0 + np.abs(self.f) ** 2 + np.abs(self.g) ** 2)


def _require_lambda(atom: AtomSpec):
    if atom.kind is not AtomKind.LAMBDA:
        raise ValueError("lambda solvers need AtomSpec.kind == LAMBDA")


def _scalar_coupling(pulse: PulseSpec, omega: float):
    env = _scalar_envelope_fn(pulse.envelope)
    phi = _scalar_phase_fn(pulse.phase)
    nu = pulse.carrier

    def coupling(t: float) -> complex:
        return env(t) * math.cos(nu * t) * cmath.exp(1j * (omega * t + phi(t)))

    return coupling


def integrate_lambda(
    drive: LambdaDrive,
    atom: AtomSpec,
    cfg: SimConfig = SimConfig(),
    initial: tuple[complex, complex, complex] = (0.0, 1.0, 0.0),
) -> Trajectory:
    """Integrate the three-level equations; same integrator contract as the TLS.

    The window covers the union of both pulses' supports and the step cap
    resolves the fastest of the two carriers and two transition frequencies.
    ``initial`` defaults to the standard ground-state start (0, 1, 0); the
    override exists so level-relabeling symmetries can be exercised, where
    the populated lower level must follow the relabeling.
    """
    _require_lambda(atom)
    t_start, t_end, max_step = resolve_window(
        cfg, [drive.pulse1, drive.pulse2], [atom.omega_ab, atom.omega_ac]
    )
    om1 = _scalar_coupling(drive.pulse1, atom.omega_ab)
    om2 = _scalar_coupling(drive.pulse2, atom.omega_ac)

    def rhs(t, y):
        o1 = om1(t)
        o2 = om2(t)
        ca, cb, cc = y
        return [
            1j * (o1 * cb + o2 * cc),
            1j * o1.conjugate() * ca,
            1j * o2.conjugate() * ca,
        ]

    y0 = np.array(initial, dtype=complex)
    times, y = _solve(rhs, y0, t_start, t_end, cfg, max_step)
    return Trajectory(times=times, c_a=y[0], c_b=y[1], c_c=y[2])


def _checked_exp(exponent: np.ndarray, label: str) -> np.ndarray:
    if np.max(np.abs(exponent.real)) > _EXP_GUARD:
        raise ExponentOverflowError(
            f"integrating-factor exponent {label} exceeds the overflow guard; "
            "coupling is too strong for the weak-coupling solution"
        )
    return np.exp(exponent)


def lambda_analytic(
    drive: LambdaDrive,
    atom: AtomSpec,
    n_per_cycle: int = DEFAULT_NODES_PER_CYCLE,
    literal_exponents: bool = False,
) -> LambdaAnalytic:
    """Approximate ratio solutions f, g driven by cumulative tip angles.

    Parameters
    ----------
    drive, atom
        Lambda drives and level structure.
    n_per_cycle
        Simpson nodes per period of the fastest oscillation
        max(omega_ab + nu_1, omega_ac + nu_2).
    literal_exponents
        Use the pointwise (unintegrated) exponents a = 2i theta_1' f1 and
        c = i conj(theta_1') f1 instead of their time integrals.  Kept for
        comparison; the integrated default is what solves the linearized
        equations.
    """
    _require_lambda(atom)
    half = max(
        support_window(drive.pulse1)[1],
        support_window(drive.pulse2)[1],
    )
    fastest = max(
        atom.omega_ab + drive.pulse1.carrier,
        atom.omega_ac + drive.pulse2.carrier,
    )
    times = uniform_grid((-half, half), fastest, n_per_cycle)

    om1 = transition_coupling(drive.pulse1, atom.omega_ab, times)
    om2 = transition_coupling(drive.pulse2, atom.omega_ac, times)

    theta1 = cumulative_quadrature(om1, times)
    theta2 = cumulative_quadrature(om2, times)
    f1 = 1j * theta1
    g1 = -cumulative_quadrature(np.conj(om2) * theta1, times)

    if literal_exponents:
        a = 2j * om1 * f1
        c = 1j * np.conj(om1) * f1
    else:
        a = cumulative_quadrature(2j * np.conj(om1) * f1, times)
        c = cumulative_quadrature(1j * np.conj(om1) * f1, times)

    b = 1j * om1 + 1j * om2 * g1 + 1j * np.conj(om1) * f1**2
    exp_a = _checked_exp(a, "a")
    f = cumulative_quadrature(b * exp_a, times) / exp_a

    d = 1j * np.conj(om2) * f1
    exp_c = _checked_exp(c, "c")
    g = cumulative_quadrature(d * exp_c, times) / exp_c

    return LambdaAnalytic(
        times=times, theta1=theta1, theta2=theta2, f1=f1, g1=g1, f=f, g=g
    )
