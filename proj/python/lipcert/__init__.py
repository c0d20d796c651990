"""Certified Lipschitz constants of convex functions on Euclidean balls.

Thin re-export of the native module. The certificate operations evaluate a
function only at finitely many points of a polytope cover and return a
constant that is a guaranteed upper bound on the ball modulus for globally
convex inputs; the modulus operations return sampled lower approximations.
"""

from ._lipcert import (  # noqa: F401
    AnalyticInfo,
    Ball,
    CertificateSequence,
    ConstancyReport,
    ContainmentReport,
    ConvexityReport,
    Cover,
    CoverKind,
    EstimatorParams,
    FunctionSpec,
    LipschitzCertificate,
    RadialProfile,
    RatioReport,
    SoundnessReport,
    TuneResult,
    Verdict,
    __version__,
    analytic_global_modulus,
    analytic_info,
    ball_lipschitz_constant,
    build_cross_polytope_cover,
    build_shell_cover,
    build_simplex_cover,
    certificate_sequence,
    certificate_soundness_suite,
    classify_global_lipschitz,
    convexity_check,
    corollary_constancy_check,
    cover_containment_check,
    direction_hints,
    empirical_lipschitz_ratio,
    evaluate,
    gradient,
    parse_function_spec,
    radial_growth_profile,
    subgradient_lower_bound,
    support_function,
    tune_parameters,
)
