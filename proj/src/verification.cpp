#include "lipcert/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipcert/rng.hpp"

namespace lipcert {

RatioReport empirical_lipschitz_ratio(const Function& f, const Ball& ball,
                                      std::int64_t num_pairs,
                                      std::uint64_t seed) {
    if (num_pairs < 1) {
        throw ValidationError("num_pairs must be >= 1");
    }
    const Ball checked = make_ball(ball.center, ball.radius);
    const int n = checked.dim();
    if (n != f.dim()) {
        throw ValidationError("ball dimension does not match function");
    }

    RatioReport report;
    report.pairs_tested = num_pairs;
    report.seed = seed;

    const auto consider = [&](const Vec& x, const Vec& y) {
        const double gap = distance(x, y);
        if (gap == 0.0) return;
        const double ratio = std::abs(f.value(x) - f.value(y)) / gap;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.witness_x = x;
            report.witness_y = y;
        }
    };

    std::int64_t produced = 0;
    // Hinted diameters first: exact extremal pairs for norm-like growth.
    for (const Vec& hint : f.direction_hints()) {
        if (produced >= num_pairs) break;
        if (static_cast<int>(hint.size()) != n) continue;
        const Vec u = normalized(hint);
        consider(add(checked.center, scaled(u, checked.radius)),
                 sub(checked.center, scaled(u, checked.radius)));
        ++produced;
    }
    const std::int64_t remaining = num_pairs - produced;
    const std::int64_t diameter_pairs = remaining / 4;
    const std::int64_t radial_pairs = remaining / 4;

    for (std::int64_t i = 0; i < remaining; ++i) {
        const std::uint64_t index = static_cast<std::uint64_t>(produced + i);
        if (i < diameter_pairs) {
            const Vec u = rng::unit_direction(seed, index, n);
            consider(add(checked.center, scaled(u, checked.radius)),
                     sub(checked.center, scaled(u, checked.radius)));
        } else if (i < diameter_pairs + radial_pairs) {
            // Same-direction pair: boundary point against an interior point
            // on the same ray.
            const Vec u = rng::unit_direction(seed, index, n);
            const double kappa = rng::uniform01(seed, index, rng::kAuxSlot + 7);
            consider(add(checked.center, scaled(u, checked.radius)),
                     add(checked.center, scaled(u, kappa * checked.radius)));
        } else {
            consider(rng::ball_point(seed, index, checked, 0),
                     rng::ball_point(seed, index, checked,
                                     static_cast<std::uint64_t>(n)));
        }
    }
    return report;
}

ConvexityReport convexity_check(const Function& f, const Ball& region,
                                std::int64_t num_triples, std::uint64_t seed) {
    if (num_triples < 1) {
        throw ValidationError("num_triples must be >= 1");
    }
    const Ball checked = make_ball(region.center, region.radius);
    const int n = checked.dim();
    if (n != f.dim()) {
        throw ValidationError("region dimension does not match function");
    }

    ConvexityReport report;
    report.triples_tested = num_triples;
    report.seed = seed;
    double worst_excess = 0.0;
    for (std::int64_t i = 0; i < num_triples; ++i) {
        const std::uint64_t index = static_cast<std::uint64_t>(i);
        const Vec x = rng::ball_point(seed, index, checked, 0);
        const Vec y = rng::ball_point(seed, index, checked,
                                      static_cast<std::uint64_t>(n));
        const double lambda =
            rng::uniform01(seed, index, rng::kAuxSlot + 2ull * n);
        Vec mid(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) {
            mid[k] = lambda * x[k] + (1.0 - lambda) * y[k];
        }
        const double fx = f.value(x);
        const double fy = f.value(y);
        const double lhs = f.value(mid);
        const double rhs = lambda * fx + (1.0 - lambda) * fy;
        const double tol = 1e-9 * (1.0 + std::abs(fx) + std::abs(fy));
        const double excess = lhs - rhs - tol;
        if (excess > worst_excess) {
            worst_excess = excess;
            report.ok = false;
            report.witness_x = x;
            report.witness_y = y;
            report.lambda = lambda;
            report.violation = lhs - rhs;
        }
    }
    return report;
}

SoundnessReport certificate_soundness_suite(const Function& f,
                                            const LipschitzCertificate& cert,
                                            std::int64_t num_pairs,
                                            std::uint64_t seed) {
    SoundnessReport report;
    report.certificate_constant = cert.constant;
    report.ratios = empirical_lipschitz_ratio(f, cert.ball, num_pairs, seed);
    report.pass =
        report.ratios.max_ratio <= cert.constant * (1.0 + 1e-9);
    return report;
}

std::string to_string(ConstancyVerdict verdict) {
    switch (verdict) {
        case ConstancyVerdict::ConsistentWithConstant:
            return "consistent_with_constant";
        case ConstancyVerdict::UnboundedAbove: return "unbounded_above";
        case ConstancyVerdict::BoundedWitnessed: return "bounded_witnessed";
    }
    return "bounded_witnessed";
}

ConstancyReport corollary_constancy_check(const Function& f,
                                          const std::vector<double>& probe_radii,
                                          int directions, std::uint64_t seed) {
    if (probe_radii.empty()) {
        throw ValidationError("probe_radii: schedule must be nonempty");
    }
    for (std::size_t i = 0; i < probe_radii.size(); ++i) {
        if (!(probe_radii[i] > 0.0)) {
            throw ValidationError("probe_radii: entries must be positive");
        }
        if (i > 0 && !(probe_radii[i] > probe_radii[i - 1])) {
            throw ValidationError("probe_radii: schedule must be increasing");
        }
    }
    if (directions < 1) {
        throw ValidationError("directions must be >= 1");
    }
    const int n = f.dim();

    std::vector<Vec> dirs;
    dirs.reserve(2 * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(directions));
    for (int i = 0; i < n; ++i) {
        Vec plus(static_cast<std::size_t>(n), 0.0);
        plus[static_cast<std::size_t>(i)] = 1.0;
        dirs.push_back(plus);
        dirs.push_back(scaled(plus, -1.0));
    }
    for (int i = 0; i < directions; ++i) {
        dirs.push_back(rng::unit_direction(seed, static_cast<std::uint64_t>(i), n));
    }

    const double f0 = f.value(Vec(static_cast<std::size_t>(n), 0.0));
    ConstancyReport report;
    report.radii = probe_radii;
    report.directions = static_cast<std::int64_t>(dirs.size());
    report.seed = seed;
    report.observed_max = f0;
    report.observed_min = f0;
    for (double radius : probe_radii) {
        double radius_max = -std::numeric_limits<double>::infinity();
        for (const Vec& u : dirs) {
            const double v = f.value(scaled(u, radius));
            radius_max = std::max(radius_max, v);
            report.observed_max = std::max(report.observed_max, v);
            report.observed_min = std::min(report.observed_min, v);
        }
        report.per_radius_max.push_back(radius_max);
    }

    const double tol = 1e-9 * (1.0 + std::abs(f0));
    if (report.observed_max - report.observed_min <= tol) {
        report.verdict = ConstancyVerdict::ConsistentWithConstant;
        return report;
    }
    bool strictly_growing = true;
    for (std::size_t i = 1; i < report.per_radius_max.size(); ++i) {
        if (!(report.per_radius_max[i] > report.per_radius_max[i - 1] + tol)) {
            strictly_growing = false;
            break;
        }
    }
    const double total_growth =
        report.per_radius_max.back() - report.per_radius_max.front();
    if (strictly_growing && total_growth > 10.0 * tol) {
        report.verdict = ConstancyVerdict::UnboundedAbove;
        return report;
    }
    report.verdict = ConstancyVerdict::BoundedWitnessed;
    return report;
}

}  // namespace lipcert
