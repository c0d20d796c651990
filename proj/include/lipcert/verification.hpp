#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lipcert/estimator.hpp"
#include "lipcert/function.hpp"
#include "lipcert/geometry.hpp"

namespace lipcert {

/// Sampled lower bound on the Lipschitz modulus of f on a ball: the largest
/// |f(x)-f(y)|/||x-y|| seen over seeded pairs. Never exceeds the true ball
/// modulus.
struct RatioReport {
    double max_ratio = 0.0;
    Vec witness_x;
    Vec witness_y;
    std::int64_t pairs_tested = 0;
    std::uint64_t seed = 0;
};

/// Pair sampling mixes uniform interior pairs with diameter pairs along
/// sampled and hinted directions plus radial near-boundary pairs (the worst
/// ratio of norm-like functions sits on diameters; of quadratics, on radial
/// segments). Deterministic given seed.
RatioReport empirical_lipschitz_ratio(const Function& f, const Ball& ball,
                                      std::int64_t num_pairs,
                                      std::uint64_t seed);

/// Worst sampled violation of the convexity inequality
/// f(lx + (1-l)y) <= l f(x) + (1-l) f(y) beyond the tolerance
/// 1e-9 (1 + |f(x)| + |f(y)|).
struct ConvexityReport {
    bool ok = true;
    Vec witness_x;
    Vec witness_y;
    double lambda = 0.0;
    double violation = 0.0;  ///< f(mid) - (l f(x) + (1-l) f(y)), worst case
    std::int64_t triples_tested = 0;
    std::uint64_t seed = 0;
};

ConvexityReport convexity_check(const Function& f, const Ball& region,
                                std::int64_t num_triples, std::uint64_t seed);

/// pass iff the empirical max ratio is <= L (1 + 1e-9). Violations are the
/// expected outcome for certificates computed on non-convex inputs.
struct SoundnessReport {
    bool pass = false;
    double certificate_constant = 0.0;
    RatioReport ratios;
};

SoundnessReport certificate_soundness_suite(const Function& f,
                                            const LipschitzCertificate& cert,
                                            std::int64_t num_pairs,
                                            std::uint64_t seed);

/// Probe verdicts for the bounded-above-implies-constant property of convex
/// functions. ConsistentWithConstant is sampled evidence, not a proof.
enum class ConstancyVerdict {
    ConsistentWithConstant,
    UnboundedAbove,
    BoundedWitnessed,
};

std::string to_string(ConstancyVerdict verdict);

struct ConstancyReport {
    ConstancyVerdict verdict = ConstancyVerdict::BoundedWitnessed;
    double observed_max = 0.0;
    double observed_min = 0.0;
    std::vector<double> per_radius_max;
    std::vector<double> radii;
    std::int64_t directions = 0;
    std::uint64_t seed = 0;
};

/// Probes max f over {+/- e_i} plus seeded directions at each radius.
/// UnboundedAbove when the per-radius maxima grow strictly and
/// substantially; ConsistentWithConstant when the full sampled range stays
/// within 1e-9 (1 + |f(0)|); BoundedWitnessed(observed max) otherwise.
ConstancyReport corollary_constancy_check(const Function& f,
                                          const std::vector<double>& probe_radii,
                                          int directions, std::uint64_t seed);

}  // namespace lipcert
