"""Grand confluent hypergeometric function toolkit.

Evaluates both Frobenius solutions of

    x y'' + (mu x^2 + eps x + nu) y' + (Omega x + eps omega) y = 0

through resummed nested series (infinite-series and B-terminated
polynomial classes), validates them against direct recurrence summation
and the ODE itself, and applies them to three quantum bound-state
problems.
"""

from .errors import (
    BetaMismatch,
    DegenerateCoupling,
    DomainError,
    GammaPole,
    GchError,
    IndeterminateError,
    KindRestrictionError,
    NonFiniteError,
    NormalizationPole,
    NoTermination,
    PoleError,
    TailNotDecayed,
)
from .params import (
    DerivedVars,
    GchParams,
    SolutionKind,
    ValidatedParams,
    coefficient_A,
    coefficient_B,
    indicial_roots,
    validate,
)
from .recurrence import EvalResult, Truncation, coefficients, detect_termination, sum_series
from .series import (
    BetaSequence,
    BetaSource,
    NestedTruncation,
    betas_from_omega,
    eval_general,
    eval_qw_infinite,
    eval_qw_poly,
    eval_rw_infinite,
    eval_rw_poly,
    pochhammer_ratio,
)
from .asymptotics import (
    AsymptoticRegime,
    asym_small_eps,
    asym_small_mu,
    asym_small_mu_resummed,
    erf,
    erfi,
    limit_value,
)
from .spectra import (
    Confinement,
    EigenState,
    QQbar,
    RotatingOscillator,
    eigen_oscillator,
    energy_confinement,
    energy_qqbar,
    envelope,
    make_state,
    map_confinement,
    map_oscillator,
    map_qqbar,
    normalize,
    radial_norm,
    small_r_exponent,
    wavefunction,
    wavefunction_result,
)
from .verify import CrossReport, GridSpec, ResidualReport, cross_validate, kummer_oracle, ode_residual

__version__ = "0.1.0"

__all__ = [
    "AsymptoticRegime",
    "BetaMismatch",
    "BetaSequence",
    "BetaSource",
    "Confinement",
    "CrossReport",
    "DegenerateCoupling",
    "DerivedVars",
    "DomainError",
    "EigenState",
    "EvalResult",
    "GammaPole",
    "GchError",
    "GchParams",
    "GridSpec",
    "IndeterminateError",
    "KindRestrictionError",
    "NestedTruncation",
    "NonFiniteError",
    "NormalizationPole",
    "NoTermination",
    "PoleError",
    "QQbar",
    "ResidualReport",
    "RotatingOscillator",
    "SolutionKind",
    "TailNotDecayed",
    "Truncation",
    "ValidatedParams",
    "asym_small_eps",
    "asym_small_mu",
    "asym_small_mu_resummed",
    "betas_from_omega",
    "coefficient_A",
    "coefficient_B",
    "coefficients",
    "cross_validate",
    "detect_termination",
    "eigen_oscillator",
    "energy_confinement",
    "energy_qqbar",
    "envelope",
    "erf",
    "erfi",
    "eval_general",
    "eval_qw_infinite",
    "eval_qw_poly",
    "eval_rw_infinite",
    "eval_rw_poly",
    "indicial_roots",
    "kummer_oracle",
    "limit_value",
    "make_state",
    "map_confinement",
    "map_oscillator",
    "map_qqbar",
    "normalize",
    "ode_residual",
    "pochhammer_ratio",
    "radial_norm",
    "small_r_exponent",
    "sum_series",
    "validate",
    "wavefunction",
    "wavefunction_result",
]
