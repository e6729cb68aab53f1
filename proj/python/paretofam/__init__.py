"""Pareto family-weight simulation and asymptotic laws.

Thin wrapper over the C++ core: population sampling, the insert-and-shrink
recursion chain, and the closed-form densities/moments for normalized
Pareto(alpha) family weights.
"""

from paretofam._core import (  # noqa: F401
    AlphaParam,
    ChainResult,
    OrderStatMoments,
    ReplicateRecord,
    __version__,
    cv_y2,
    expected_yk,
    law_domain,
    order_stat_moments,
    pair_moment,
    pareto_inverse_cdf,
    pi_ne,
    pi_w1,
    pi_w2,
    pi_y2,
    reconstruct_y2_from_parts,
    rho,
    rho_star,
    run_chain,
    simulate,
    sweepstakes_curve,
)

__all__ = [
    "AlphaParam",
    "ChainResult",
    "OrderStatMoments",
    "ReplicateRecord",
    "cv_y2",
    "expected_yk",
    "law_domain",
    "order_stat_moments",
    "pair_moment",
    "pareto_inverse_cdf",
    "pi_ne",
    "pi_w1",
    "pi_w2",
    "pi_y2",
    "reconstruct_y2_from_parts",
    "rho",
    "rho_star",
    "run_chain",
    "simulate",
    "sweepstakes_curve",
]
