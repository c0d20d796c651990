#include "lipcert/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "lipcert/rng.hpp"

namespace lipcert {

void validate_params(const EstimatorParams& params) {
    if (!(params.lambda > 0.0 && params.lambda < 1.0)) {
        throw InvalidParams("lambda must lie in (0,1)");
    }
    if (!(params.alpha > 1.0)) {
        throw InvalidParams("alpha must exceed 1");
    }
    if (!(params.alpha > params.lambda / (1.0 - params.lambda))) {
        throw InvalidParams("alpha must exceed lambda/(1-lambda)");
    }
}

double lambda_for_alpha(double alpha, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InvalidParams("delta must lie in (0,1)");
    }
    if (!(alpha > 1.0)) {
        throw InvalidParams("alpha must exceed 1");
    }
    return (1.0 - delta) * alpha / (alpha + 1.0);
}

Cover build_certificate_cover(const Ball& ball, double alpha,
                              CoverKind cover_kind) {
    const Ball inflated = make_ball(ball.center, alpha * ball.radius);
    switch (cover_kind) {
        case CoverKind::CrossPolytope:
            return build_cross_polytope_cover(inflated);
        case CoverKind::Simplex: return build_simplex_cover(inflated);
        case CoverKind::Shell:
            return build_shell_cover(inflated, kCertificateShellSlack);
    }
    throw Error("unreachable cover kind");
}

LipschitzCertificate ball_lipschitz_constant(const Function& f,
                                             const Ball& ball,
                                             const EstimatorParams& params,
                                             CoverKind cover_kind) {
    validate_params(params);
    const Ball checked = make_ball(ball.center, ball.radius);
    if (checked.dim() != f.dim()) {
        throw ValidationError("ball center dimension " +
                              std::to_string(checked.dim()) +
                              " does not match function dimension " +
                              std::to_string(f.dim()));
    }
    const Cover cover = build_certificate_cover(checked, params.alpha,
                                                cover_kind);

    const double f_at_center = f.value(checked.center);
    // Indexed max: the first maximizer wins, so any parallel evaluation
    // order reproduces the serial value.
    double max_over_cover = -std::numeric_limits<double>::infinity();
    for (const Vec& p : cover.points) {
        max_over_cover = std::max(max_over_cover, f.value(p));
    }

    LipschitzCertificate cert;
    cert.ball = checked;
    cert.params = params;
    cert.cover_kind = cover_kind;
    cert.max_over_cover = max_over_cover;
    cert.value_at_center = f_at_center;
    cert.eval_count = static_cast<int>(cover.points.size()) + 1;
    cert.function_id = f.id();
    cert.constant = (max_over_cover - f_at_center) /
                    (checked.radius * params.lambda * (params.alpha - 1.0));
    return cert;
}

TuneResult tune_parameters(const Function& f, const Ball& ball,
                           const std::vector<double>& alpha_grid, double delta,
                           CoverKind cover_kind) {
    if (alpha_grid.empty()) {
        throw InvalidParams("alpha grid must be nonempty");
    }
    TuneResult result;
    result.grid.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        const EstimatorParams params{lambda_for_alpha(alpha, delta), alpha};
        result.grid.push_back(
            ball_lipschitz_constant(f, ball, params, cover_kind));
    }
    const auto better = [](const LipschitzCertificate& a,
                           const LipschitzCertificate& b) {
        if (a.constant != b.constant) return a.constant < b.constant;
        if (a.params.alpha != b.params.alpha) {
            return a.params.alpha < b.params.alpha;
        }
        return a.eval_count < b.eval_count;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.grid.size(); ++i) {
        if (better(result.grid[i], result.grid[best])) best = i;
    }
    result.best = result.grid[best];
    return result;
}

RadialProfile radial_growth_profile(const Function& f,
                                    const std::vector<double>& radii,
                                    int num_random_directions,
                                    const std::vector<Vec>& hints,
                                    std::uint64_t seed) {
    if (radii.empty()) {
        throw ValidationError("radii: schedule must be nonempty");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
            throw ValidationError("radii: entries must be positive and finite");
        }
        if (i > 0 && !(radii[i] > radii[i - 1])) {
            throw ValidationError("radii: schedule must be strictly increasing");
        }
    }
    if (num_random_directions < 0) {
        throw ValidationError("num_random_directions must be >= 0");
    }
    const int n = f.dim();

    std::vector<Vec> directions;
    directions.reserve(2 * static_cast<std::size_t>(n) + hints.size() +
                       static_cast<std::size_t>(num_random_directions));
    for (int i = 0; i < n; ++i) {
        Vec plus(static_cast<std::size_t>(n), 0.0);
        plus[static_cast<std::size_t>(i)] = 1.0;
        directions.push_back(plus);
        directions.push_back(scaled(plus, -1.0));
    }
    for (std::size_t i = 0; i < hints.size(); ++i) {
        if (static_cast<int>(hints[i].size()) != n) {
            throw ValidationError("hints[" + std::to_string(i) +
                                  "]: dimension mismatch");
        }
        directions.push_back(normalized(hints[i]));
    }
    for (int i = 0; i < num_random_directions; ++i) {
        directions.push_back(
            rng::unit_direction(seed, static_cast<std::uint64_t>(i), n));
    }

    RadialProfile profile;
    profile.center.assign(static_cast<std::size_t>(n), 0.0);
    profile.radii = radii;
    profile.directions_used = static_cast<int>(directions.size());
    profile.seed = seed;
    profile.ratios.reserve(radii.size());
    profile.signed_ratios.reserve(radii.size());
    for (double radius : radii) {
        double max_abs = 0.0;
        double max_signed = -std::numeric_limits<double>::infinity();
        for (const Vec& u : directions) {
            const double v = f.value(scaled(u, radius));
            max_abs = std::max(max_abs, std::abs(v));
            max_signed = std::max(max_signed, v);
        }
        profile.ratios.push_back(max_abs / radius);
        profile.signed_ratios.push_back(max_signed / radius);
    }
    return profile;
}

std::string to_string(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::GloballyLipschitz: return "globally_lipschitz";
        case Verdict::Kind::Diverging: return "diverging";
        case Verdict::Kind::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict classify_global_lipschitz(const RadialProfile& profile,
                                  double growth_factor_threshold,
                                  double plateau_rel_tol) {
    const std::size_t count = profile.radii.size();
    if (count < 4 || profile.ratios.size() != count) {
        throw InsufficientProfile(
            "classification requires >= 4 radii spanning >= 3 decades");
    }
    const double decades_spanned =
        std::log10(profile.radii.back() / profile.radii.front());
    if (decades_spanned < 3.0 * (1.0 - 1e-12)) {
        throw InsufficientProfile(
            "classification requires >= 4 radii spanning >= 3 decades");
    }

    // Tail variation per decade, with an absolute floor of 1 in the scale so
    // ratios decaying to zero register as a plateau at zero.
    const std::size_t tail_start = count - 3;
    double max_step = 0.0;
    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t i = tail_start + 1; i < count; ++i) {
        const double decades =
            std::log10(profile.radii[i] / profile.radii[i - 1]);
        const double scale =
            1.0 + std::max(profile.ratios[i], profile.ratios[i - 1]);
        const double step = (profile.ratios[i] - profile.ratios[i - 1]) /
                            (scale * decades);
        max_step = std::max(max_step, std::abs(step));
        min_step = std::min(min_step, step);
    }
    const bool plateau = max_step <= plateau_rel_tol;
    const bool tail_increasing = min_step > plateau_rel_tol;

    const double first = profile.ratios.front();
    const double last = profile.ratios.back();
    double growth = 1.0;
    if (first > 0.0) {
        growth = last / first;
    } else if (last > 0.0) {
        growth = std::numeric_limits<double>::infinity();
    }

    Verdict verdict;
    if (growth > growth_factor_threshold && tail_increasing) {
        verdict.kind = Verdict::Kind::Diverging;
        return verdict;
    }
    if (plateau) {
        verdict.kind = Verdict::Kind::GloballyLipschitz;
        verdict.modulus_estimate = std::max(
            {profile.ratios[count - 3], profile.ratios[count - 2],
             profile.ratios[count - 1]});
        return verdict;
    }
    verdict.kind = Verdict::Kind::Inconclusive;
    verdict.reason = "tail varies by " + nlohmann::json(max_step).dump() +
                     " per decade (plateau tolerance " +
                     nlohmann::json(plateau_rel_tol).dump() +
                     ") while last/first ratio " +
                     nlohmann::json(growth).dump() +
                     " is below the growth threshold " +
                     nlohmann::json(growth_factor_threshold).dump();
    return verdict;
}

CertificateSequence certificate_sequence(const Function& f, const Vec& center,
                                         double alpha, double delta,
                                         const std::vector<double>& radii,
                                         std::optional<double> ell_reference) {
    if (radii.empty()) {
        throw ValidationError("radii: schedule must be nonempty");
    }
    const double lambda = lambda_for_alpha(alpha, delta);
    const EstimatorParams params{lambda, alpha};
    validate_params(params);

    CertificateSequence seq;
    seq.alpha = alpha;
    seq.delta = delta;
    seq.ell_reference = ell_reference;
    if (ell_reference) {
        seq.reference_bound = alpha / (lambda * (alpha - 1.0)) * *ell_reference;
    }
    seq.certificates.reserve(radii.size());
    double previous = 0.0;
    for (double r : radii) {
        if (!(r > previous)) {
            throw ValidationError("radii: schedule must be strictly increasing "
                                  "and positive");
        }
        previous = r;
        seq.certificates.push_back(ball_lipschitz_constant(
            f, make_ball(center, r), params, CoverKind::Shell));
    }
    return seq;
}

double subgradient_lower_bound(const Function& f,
                               const std::vector<Vec>& sample_points) {
    if (sample_points.empty()) {
        throw ValidationError("sample_points must be nonempty");
    }
    double bound = 0.0;
    for (std::size_t i = 0; i < sample_points.size(); ++i) {
        const std::optional<Vec> g = f.gradient_at(sample_points[i]);
        if (!g) {
            throw GradientUnavailable("gradient unavailable at sample " +
                                      std::to_string(i));
        }
        bound = std::max(bound, norm(*g));
    }
    return bound;
}

}  // namespace lipcert
