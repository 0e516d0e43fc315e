"""Link-level BER analysis for mode/frequency-hopping anti-jamming systems.

Thin wrapper over the C++ core: closed-form BER expressions under
Nakagami-m fading with multi-user jamming, hop-pattern generation, and the
reproducible Monte Carlo estimator that cross-checks every formula.
"""

from ._vortexhop import (  # noqa: F401
    DomainError,
    NumericalDiagnostic,
    SizeError,
    ValidationError,
    analytic_ber,
    bessel_j,
    binomial,
    c_coeff,
    clear_ber,
    collision_prob,
    conditional_ber,
    db_to_linear,
    estimate_avg_sinr,
    figure_presets,
    gain_closed,
    gamma_int,
    gen_pattern,
    jammed_ber,
    linear_to_db,
    mc_ber,
    nakagami_pdf,
    p_clear,
    partial_fractions,
    reproduce_figure,
)

__all__ = [
    "DomainError",
    "NumericalDiagnostic",
    "SizeError",
    "ValidationError",
    "analytic_ber",
    "bessel_j",
    "binomial",
    "c_coeff",
    "clear_ber",
    "collision_prob",
    "conditional_ber",
    "db_to_linear",
    "estimate_avg_sinr",
    "figure_presets",
    "gain_closed",
    "gamma_int",
    "gen_pattern",
    "jammed_ber",
    "linear_to_db",
    "mc_ber",
    "nakagami_pdf",
    "p_clear",
    "partial_fractions",
    "reproduce_figure",
]

__version__ = "0.1.0"
