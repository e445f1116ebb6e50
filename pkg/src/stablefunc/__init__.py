"""stablefunc: exact laws and Monte Carlo oracles for stable-process power integrals.

The package computes, samples and verifies the distribution of

    A = integral of |L_s|^q ds over s in [0, T),

where ``L`` is a strictly stable Levy process started at 1, normalised by its
positivity parameter ``rho``, and ``T`` is its first passage time below zero.
The exact laws are infinite products of Beta random variables with computable
Mellin transforms; an independent Euler-walk path oracle and a statistical
test layer verify every identity the library exposes.
"""

from .specfun import (
    AccuracyError,
    DomainError,
    QuadratureResult,
    QuadratureSpec,
    digamma,
    integrate,
    log_double_gamma,
    log_gamma,
)
from .distributions import RngStream, StableParams
from .beta_product import (
    BetaProductParams,
    identity_catalog,
    mellin_T,
    mellin_T_via_double_gamma,
    sample_T,
    sd_criterion,
)
from .laws import (
    LawExpr,
    Strip,
    beta,
    beta_product,
    const,
    exponential,
    gamma_rv,
    law_from_json,
    law_to_json,
    mittag_leffler,
    mu_cauchy,
    positive_stable,
    power,
    product,
    reciprocal,
    size_bias,
    uniform,
)
from .functional_law import (
    FunctionalIdentity,
    FunctionalSpec,
    ProcessClass,
    classify,
    corollary_identities,
    density_A,
    density_is_nonincreasing,
    doney_identity,
    dondon_identity,
    explicit_identities,
    law_of_A,
    mellin_A,
    mellin_strip,
    sample_A,
    stopped_extrema_laws,
)
from .path_oracle import (
    BatchResult,
    PathConfig,
    ResolvedBatch,
    RunResult,
    resolve_censored,
    simulate_killed_batch,
    simulate_killed_functional,
    simulate_subordinator_integral,
    subordinator_integral_batch,
)
from .stat_tests import (
    MellinEstimate,
    TestReport,
    empirical_mellin,
    ks_threshold,
    ks_two_sample,
    reports_to_csv,
    reports_to_json,
    verify_identity,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "DomainError",
    "QuadratureResult",
    "QuadratureSpec",
    "digamma",
    "integrate",
    "log_double_gamma",
    "log_gamma",
    "RngStream",
    "StableParams",
    "BetaProductParams",
    "identity_catalog",
    "mellin_T",
    "mellin_T_via_double_gamma",
    "sample_T",
    "sd_criterion",
    "LawExpr",
    "Strip",
    "beta",
    "beta_product",
    "const",
    "exponential",
    "gamma_rv",
    "law_from_json",
    "law_to_json",
    "mittag_leffler",
    "mu_cauchy",
    "positive_stable",
    "power",
    "product",
    "reciprocal",
    "size_bias",
    "uniform",
    "FunctionalIdentity",
    "FunctionalSpec",
    "ProcessClass",
    "classify",
    "corollary_identities",
    "density_A",
    "density_is_nonincreasing",
    "doney_identity",
    "dondon_identity",
    "explicit_identities",
    "law_of_A",
    "mellin_A",
    "mellin_strip",
    "sample_A",
    "stopped_extrema_laws",
    "BatchResult",
    "PathConfig",
    "ResolvedBatch",
    "RunResult",
    "resolve_censored",
    "simulate_killed_batch",
    "simulate_killed_functional",
    "simulate_subordinator_integral",
    "subordinator_integral_batch",
    "MellinEstimate",
    "TestReport",
    "empirical_mellin",
    "ks_threshold",
    "ks_two_sample",
    "reports_to_csv",
    "reports_to_json",
    "verify_identity",
    "__version__",
]
