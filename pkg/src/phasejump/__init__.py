"""Dynamics of two-level and lambda systems under few-cycle pulses with
smooth carrier-phase jumps: exact integration, tip-angle approximations,
frequency sweeps, and phase-shape optimization."""

from .dynamics import (
    SimConfig,
    Trajectory,
    asymptotic_population,
    integrate_tls,
    integrate_tls_freqmod,
    tail_spread,
)
from .errors import (
    ConfigError,
    ExponentOverflowError,
    IntegrationError,
    PhaseJumpError,
    TailNotSettledError,
)
from .lambda_system import (
    LambdaAnalytic,
    LambdaDrive,
    integrate_lambda,
    lambda_analytic,
)
from .pulses import (
    AtomKind,
    AtomSpec,
    Envelope,
    EnvelopeFamily,
    PhaseFunction,
    PhaseShape,
    PhaseTerm,
    PulseSpec,
    effective_rabi,
    eval_envelope,
    eval_phase,
    support_window,
    transition_coupling,
)
from .riccati import (
    RatioSeries,
    TipAngleSeries,
    amplitude_from_f,
    riccati_residual,
    riccati_solution,
    tip_angle,
)
from .sweep import (
    CandidateResult,
    Objective,
    OptReport,
    Solver,
    SweepResult,
    default_phase_candidates,
    enhancement_factor,
    optimize_phase,
    sweep_frequency,
    sweep_frequency_lambda,
)

__version__ = "0.1.0"

__all__ = [
    "AtomKind",
    "AtomSpec",
    "CandidateResult",
    "ConfigError",
    "Envelope",
    "EnvelopeFamily",
    "ExponentOverflowError",
    "IntegrationError",
    "LambdaAnalytic",
    "LambdaDrive",
    "Objective",
    "OptReport",
    "PhaseFunction",
    "PhaseJumpError",
    "PhaseShape",
    "PhaseTerm",
    "PulseSpec",
    "RatioSeries",
    "SimConfig",
    "Solver",
    "SweepResult",
    "TailNotSettledError",
    "TipAngleSeries",
    "Trajectory",
    "amplitude_from_f",
    "asymptotic_population",
    "default_phase_candidates",
    "effective_rabi",
    "enhancement_factor",
    "eval_envelope",
    "eval_phase",
    "integrate_lambda",
    "integrate_tls",
    "integrate_tls_freqmod",
    "lambda_analytic",
    "optimize_phase",
    "riccati_residual",
    "riccati_solution",
    "support_window",
    "sweep_frequency",
    "sweep_frequency_lambda",
    "tail_spread",
    "tip_angle",
    "transition_coupling",
]
