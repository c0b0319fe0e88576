"""Pulse envelopes, smooth phase-jump functions, and effective couplings.

Everything runs in dimensionless units: the atomic transition frequency sets
the scale (omega = 1 by convention) and time is measured in 1/omega.  A pulse
is an envelope (peak Rabi frequency A, inverse width alpha), a carrier
frequency nu, and a smooth carrier-phase function phi(t) built as a sum of
primitive transients (tanh rise/fall, sech, sech^2, constant offset).

The complex effective coupling driving the amplitude equations is

    Omega(t) = A * env(alpha * t) * cos(nu * t) * exp(i * (omega * t + phi(t)))

evaluated by :func:`effective_rabi` for a two-level atom and by
:func:`transition_coupling` per transition of a lambda system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "DEFAULT_FLOOR",
    "PhaseShape",
    "PhaseTerm",
    "PhaseFunction",
    "EnvelopeFamily",
    "Envelope",
    "PulseSpec",
    "AtomKind",
    "AtomSpec",
    "eval_phase",
    "eval_envelope",
    "transition_coupling",
    "effective_rabi",
    "support_window",
]

# Envelope tail below this fraction of the peak is numerically irrelevant
# at double precision; used as the default support-window cutoff.
DEFAULT_FLOOR = 1e-14


class PhaseShape(str, Enum):
    """Primitive shapes for a smooth carrier-phase transient."""

    TANH_RISE = "tanh_rise"
    TANH_FALL = "tanh_fall"
    SECH = "sech"
    SECH_SQUARED = "sech_squared"
    CONSTANT = "constant"


@dataclass(frozen=True)
class PhaseTerm:
    """One additive term of a phase function.

    Limits and peak values, with a = amplitude, k = steepness, t0 = center:

    ==============  =======================  ==================
    shape           value                    limits
    ==============  =======================  ==================
    TANH_RISE       a * (1 + tanh(k(t-t0)))  0 -> 2a
    TANH_FALL       a * (1 - tanh(k(t-t0)))  2a -> 0
    SECH            a * sech(k(t-t0))        0, peak a at t0
    SECH_SQUARED    a * sech^2(k(t-t0))      0, peak a at t0
    CONSTANT        a                        a everywhere
    ==============  =======================  ==================

    The jump duration is 1/steepness; steepness is ignored for CONSTANT.
    """

    shape: PhaseShape
    amplitude: float
    steepness: float = 1.0
    center: float = 0.0

    def __post_init__(self):
        if self.shape is PhaseShape.CONSTANT:
            # Steepness and center are meaningless for a constant offset;
            # normalize them so equal phases compare equal.
            object.__setattr__(self, "steepness", 1.0)
            object.__setattr__(self, "center", 0.0)
        elif not self.steepness > 0:
            raise ValueError(
                f"PhaseTerm.steepness must be > 0 for shape {self.shape.value}, "
                f"got {self.steepness}"
            )


@dataclass(frozen=True)
class PhaseFunction:
    """Sum of :class:`PhaseTerm` primitives; empty means phi(t) = 0."""

    terms: tuple[PhaseTerm, ...] = ()

    def __post_init__(self):
        # Accept any iterable but store a hashable tuple.
        object.__setattr__(self, "terms", tuple(self.terms))

    def __add__(self, other: "PhaseFunction") -> "PhaseFunction":
        return PhaseFunction(self.terms + other.terms)


class EnvelopeFamily(str, Enum):
    GAUSSIAN = "gaussian"
    SECH = "sech"


@dataclass(frozen=True)
class Envelope:
    """Pulse envelope, peaking at t = 0 with value ``amplitude``.

    GAUSSIAN evaluates A * exp(-(alpha*t)^2), SECH evaluates A * sech(alpha*t);
    ``width`` is the inverse duration alpha (pulse width tau = 1/alpha).
    """

    family: EnvelopeFamily
    amplitude: float
    width: float

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise ValueError(f"Envelope.amplitude must be >= 0, got {self.amplitude}")
        if not self.width > 0:
            raise ValueError(f"Envelope.width must be > 0, got {self.width}")


@dataclass(frozen=True)
class PulseSpec:
    """A driving pulse: envelope, carrier frequency, carrier-phase function."""

    envelope: Envelope
    carrier: float
    phase: PhaseFunction = field(default_factory=PhaseFunction)

    def __post_init__(self):
        if not self.carrier > 0:
            raise ValueError(f"PulseSpec.carrier must be > 0, got {self.carrier}")


class AtomKind(str, Enum):
    TWO_LEVEL = "two_level"
    LAMBDA = "lambda"


@dataclass(frozen=True)
class AtomSpec:
    """Level structure: a two-level atom or a lambda system.

    ``omega_ab`` is the two-level transition frequency (or the a-b transition
    of a lambda system); ``omega_ac`` exists only for lambda systems.
    """

    kind: AtomKind
    omega_ab: float
    omega_ac: float | None = None

    def __post_init__(self):
        if not self.omega_ab > 0:
            raise ValueError(f"AtomSpec.omega_ab must be > 0, got {self.omega_ab}")
        if self.kind is AtomKind.LAMBDA:
            if self.omega_ac is None or not self.omega_ac > 0:
                raise ValueError("lambda AtomSpec requires omega_ac > 0")
        elif self.omega_ac is not None:
            raise ValueError("omega_ac is only meaningful for lambda atoms")

    @classmethod
    def two_level(cls, omega: float = 1.0) -> "AtomSpec":
        return cls(AtomKind.TWO_LEVEL, omega_ab=omega)

    @classmethod
    def lambda_system(cls, omega_ab: float = 1.0, omega_ac: float = 1.0) -> "AtomSpec":
        return cls(AtomKind.LAMBDA, omega_ab=omega_ab, omega_ac=omega_ac)


def _sech(u):
    # Overflow-safe sech: cosh(u) blows past float range around |u| ~ 710.
    e = np.exp(-np.abs(u))
    return 2.0 * e / (1.0 + e * e)


def _term_values(term: PhaseTerm, t: np.ndarray) -> np.ndarray:
    if term.shape is PhaseShape.CONSTANT:
        return np.full_like(t, term.amplitude)
    u = term.steepness * (t - term.center)
    if term.shape is PhaseShape.TANH_RISE:
        return term.amplitude * (1.0 + np.tanh(u))
    if term.shape is PhaseShape.TANH_FALL:
        return term.amplitude * (1.0 - np.tanh(u))
    if term.shape is PhaseShape.SECH:
        return term.amplitude * _sech(u)
    if term.shape is PhaseShape.SECH_SQUARED:
        return term.amplitude * _sech(u) ** 2
    raise ValueError(f"unknown phase shape {term.shape!r}")


def eval_phase(phase: PhaseFunction, t):
    """Evaluate phi(t) in radians; accepts a scalar or array of times."""
    t_arr = np.asarray(t, dtype=float)
    out = np.zeros_like(t_arr)
    for term in phase.terms:
        out = out + _term_values(term, t_arr)
    return float(out) if out.ndim == 0 else out


def eval_envelope(env: Envelope, t):
    """Evaluate the envelope at time t (scalar or array); peak at t = 0."""
    t_arr = np.asarray(t, dtype=float)
    u = env.width * t_arr
    if env.family is EnvelopeFamily.GAUSSIAN:
        out = env.amplitude * np.exp(-(u * u))
    else:
        out = env.amplitude * _sech(u)
    return float(out) if out.ndim == 0 else out


def transition_coupling(pulse: PulseSpec, omega: float, t):
    """Complex effective coupling of one transition at frequency ``omega``.

    Returns env(t) * cos(nu t) * exp(i (omega t + phi(t))).  No
    rotating-wave approximation is made: the counter-rotating exp(i(omega+nu)t)
    content is retained through the explicit cos(nu t) factor.
    """
    t_arr = np.asarray(t, dtype=float)
    total_phase = omega * t_arr + eval_phase(pulse.phase, t_arr)
    out = (
        eval_envelope(pulse.envelope, t_arr)
        * np.cos(pulse.carrier * t_arr)
        * np.exp(1j * total_phase)
    )
    return complex(out) if out.ndim == 0 else out


def effective_rabi(pulse: PulseSpec, atom: AtomSpec, t):
    """Effective coupling of a two-level atom; see :func:`transition_coupling`."""
    if atom.kind is not AtomKind.TWO_LEVEL:
        raise ValueError("effective_rabi expects a two-level atom; "
                         "lambda transitions use transition_coupling directly")
    return transition_coupling(pulse, atom.omega_ab, t)


def support_window(pulse: PulseSpec, floor: float = DEFAULT_FLOOR) -> tuple[float, float]:
    """Symmetric window [-T, T] outside which env(t)/A <= floor.

    For the Gaussian family T = sqrt(-ln floor)/alpha; for the sech family
    T = arcsech(floor)/alpha.  ``floor`` must lie strictly in (0, 1).
    """
    if not 0.0 < floor < 1.0:
        raise ValueError(f"support_window floor must be in (0, 1), got {floor}")
    alpha = pulse.envelope.width
    if pulse.envelope.family is EnvelopeFamily.GAUSSIAN:
        half = math.sqrt(-math.log(floor)) / alpha
    else:
        half = math.acosh(1.0 / floor) / alpha
    return (-half, half)


# Fast scalar evaluators for integrator inner loops.  They mirror the public
# array operations above using math/cmath on plain floats, which is several
# times faster per call than numpy ufuncs on 0-d arrays.

def _scalar_phase_fn(phase: PhaseFunction):
    const = sum(
        term.amplitude for term in phase.terms if term.shape is PhaseShape.CONSTANT
    )
    dynamic = [
        (term.shape, term.amplitude, term.steepness, term.center)
        for term in phase.terms
        if term.shape is not PhaseShape.CONSTANT
    ]
    if not dynamic:
        return lambda t: const

    def phi(t: float) -> float:
        value = const
        for shape, amp, k, t0 in dynamic:
            u = k * (t - t0)
            if shape is PhaseShape.TANH_RISE:
                value += amp * (1.0 + math.tanh(u))
            elif shape is PhaseShape.TANH_FALL:
                value += amp * (1.0 - math.tanh(u))
            else:
                e = math.exp(-abs(u))
                sech = 2.0 * e / (1.0 + e * e)
                if shape is PhaseShape.SECH:
                    value += amp * sech
                else:
                    value += amp * sech * sech
        return value

    return phi


def _scalar_envelope_fn(env: Envelope):
    amp = float(env.amplitude)
    alpha = float(env.width)
    if env.family is EnvelopeFamily.GAUSSIAN:
        return lambda t: amp * math.exp(-((alpha * t) ** 2))

    def sech_env(t: float) -> float:
        e = math.exp(-abs(alpha * t))
        return amp * 2.0 * e / (1.0 + e * e)

    return sech_env
