#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipcert/function.hpp"
#include "lipcert/geometry.hpp"

namespace lipcert {

/// Certificate parameters: lambda in (0,1) and alpha > max{1, lambda/(1-lambda)}.
struct EstimatorParams {
    double lambda = 0.5;
    double alpha = 2.0;
};

/// Throws InvalidParams naming the violated inequality.
void validate_params(const EstimatorParams& params);

/// Strictly feasible lambda for a given alpha: (1-delta) * alpha/(alpha+1).
/// The certificate is strictly decreasing in lambda for a fixed cover, so
/// lambda is pushed toward its feasibility boundary alpha/(alpha+1).
double lambda_for_alpha(double alpha, double delta);

/// A certified Lipschitz constant for a convex function on a ball,
///   L = (M - f(x0)) / (r lambda (alpha - 1)),
/// M the max of f over a finite cover of B(x0, alpha r). For convex inputs
/// M >= f(x0) (the center lies in the hull), hence L >= 0. The guarantee
/// |f(x)-f(y)| <= L ||x-y|| on B(x0, r) requires global convexity of f.
struct LipschitzCertificate {
    double constant = 0.0;       ///< L
    Ball ball;                   ///< B(x0, r)
    EstimatorParams params;
    CoverKind cover_kind = CoverKind::CrossPolytope;
    double max_over_cover = 0.0;   ///< M
    double value_at_center = 0.0;  ///< f(x0)
    int eval_count = 0;            ///< cover points + center
    std::string function_id;
};

/// Slack used for shell covers inside certificates; matches the shell
/// construction S in B(x0, alpha r + 1) \ B(x0, alpha r).
inline constexpr double kCertificateShellSlack = 1.0;

LipschitzCertificate ball_lipschitz_constant(const Function& f,
                                             const Ball& ball,
                                             const EstimatorParams& params,
                                             CoverKind cover_kind);

/// The cover a certificate evaluates over: the requested kind built for the
/// inflated ball B(x0, alpha r) (shell kind with slack 1).
Cover build_certificate_cover(const Ball& ball, double alpha,
                              CoverKind cover_kind);

struct TuneResult {
    LipschitzCertificate best;
    std::vector<LipschitzCertificate> grid;
};

/// Grid search over alpha with lambda(alpha) = (1-delta) alpha/(alpha+1).
/// Returns the certificate with minimal L; ties broken by smaller alpha,
/// then smaller eval_count.
TuneResult tune_parameters(const Function& f, const Ball& ball,
                           const std::vector<double>& alpha_grid, double delta,
                           CoverKind cover_kind);

inline const std::vector<double> kDefaultAlphaGrid{2.0, 5.0, 10.0, 50.0, 100.0};
inline constexpr double kDefaultTuneDelta = 1e-3;

/// Sampled sup-ratios of |f(x)|/||x|| over growing radii about the origin
/// (the radial limsup is center-independent). The direction set
/// {+/- e_i} ∪ hints ∪ seeded uniform directions is fixed across radii.
struct RadialProfile {
    Vec center;
    std::vector<double> radii;
    std::vector<double> ratios;         ///< sup |f(R u)| / R
    std::vector<double> signed_ratios;  ///< sup f(R u) / R
    int directions_used = 0;
    std::uint64_t seed = 0;
};

RadialProfile radial_growth_profile(const Function& f,
                                    const std::vector<double>& radii,
                                    int num_random_directions,
                                    const std::vector<Vec>& hints,
                                    std::uint64_t seed);

/// Classification of the radial profile. The modulus estimate is a sampled
/// lower approximation of the limsup, never a certified value.
struct Verdict {
    enum class Kind { GloballyLipschitz, Diverging, Inconclusive };
    Kind kind = Kind::Inconclusive;
    double modulus_estimate = 0.0;  ///< meaningful for GloballyLipschitz
    std::string reason;             ///< diagnostic for Inconclusive
};

std::string to_string(Verdict::Kind kind);

inline constexpr double kDefaultGrowthFactorThreshold = 10.0;
inline constexpr double kDefaultPlateauRelTol = 0.01;

/// Requires >= 4 radii spanning >= 3 decades (InsufficientProfile
/// otherwise). Diverging when the last-to-first ratio exceeds
/// growth_factor_threshold and the tail still increases by more than
/// plateau_rel_tol per decade; GloballyLipschitz(max of the last 3 ratios)
/// when the tail varies by at most plateau_rel_tol per decade; Inconclusive
/// with a diagnostic otherwise.
Verdict classify_global_lipschitz(
    const RadialProfile& profile,
    double growth_factor_threshold = kDefaultGrowthFactorThreshold,
    double plateau_rel_tol = kDefaultPlateauRelTol);

/// The sequence r -> L(lambda(alpha), alpha, r) over shell covers with
/// slack 1. For convex globally Lipschitz f the sequence is asymptotically
/// bounded by alpha/(lambda (alpha-1)) * ell; the reference bound is
/// reported when an analytic or estimated ell is supplied.
struct CertificateSequence {
    double alpha = 0.0;
    double delta = 0.0;
    std::vector<LipschitzCertificate> certificates;  ///< one per radius
    std::optional<double> reference_bound;  ///< alpha/(lambda(alpha-1)) * ell
    std::optional<double> ell_reference;    ///< the ell the bound used
};

CertificateSequence certificate_sequence(
    const Function& f, const Vec& center, double alpha, double delta,
    const std::vector<double>& radii,
    std::optional<double> ell_reference = std::nullopt);

/// max over samples of ||grad f(y)||: every subgradient norm lower-bounds
/// the global modulus of a convex function. For non-convex inputs the value
/// carries no lower-bound claim. Throws GradientUnavailable when the
/// gradient is missing at a sample.
double subgradient_lower_bound(const Function& f,
                               const std::vector<Vec>& sample_points);

}  // namespace lipcert
