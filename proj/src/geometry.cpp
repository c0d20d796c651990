#include "lipcert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipcert/rng.hpp"

namespace lipcert {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

double distance(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scaled(const Vec& v, double factor) {
    Vec r(v);
    for (double& c : r) c *= factor;
    return r;
}

Vec normalized(const Vec& v) {
    const double n = norm(v);
    if (!(n > 1e-300)) {
        throw ValidationError("cannot normalize a (near-)zero vector");
    }
    return scaled(v, 1.0 / n);
}

bool all_finite(const Vec& v) {
    for (double c : v) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

void validate_vector(const Vec& v, const std::string& field) {
    if (v.empty()) {
        throw ValidationError(field + ": dimension must be >= 1");
    }
    if (!all_finite(v)) {
        throw ValidationError(field + ": coordinates must be finite");
    }
}

Ball make_ball(Vec center, double radius) {
    validate_vector(center, "center");
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ValidationError("radius must be positive and finite");
    }
    return Ball{std::move(center), radius};
}

std::string to_string(CoverKind kind) {
    switch (kind) {
        case CoverKind::CrossPolytope: return "cross";
        case CoverKind::Simplex: return "simplex";
        case CoverKind::Shell: return "shell";
    }
    return "cross";
}

CoverKind cover_kind_from_string(const std::string& name) {
    if (name == "cross") return CoverKind::CrossPolytope;
    if (name == "simplex") return CoverKind::Simplex;
    if (name == "shell") return CoverKind::Shell;
    throw ValidationError("cover: unknown kind '" + name +
                          "' (expected cross, simplex or shell)");
}

namespace {

// Cover points are always assembled as center + offset with offsets that do
// not depend on the center, which makes translation equivariance exact in
// floating point.
Cover assemble_cover(CoverKind kind, const Ball& target,
                     const std::vector<Vec>& offsets, double slack) {
    Cover cover;
    cover.kind = kind;
    cover.target = target;
    cover.slack = slack;
    cover.points.reserve(offsets.size());
    double outer = 0.0;
    for (const Vec& off : offsets) {
        cover.points.push_back(add(target.center, off));
        outer = std::max(outer, norm(off));
    }
    cover.outer_radius = outer;
    return cover;
}

}  // namespace

Cover build_cross_polytope_cover(const Ball& ball_to_cover) {
    const Ball ball = make_ball(ball_to_cover.center, ball_to_cover.radius);
    const int n = ball.dim();
    const double reach = static_cast<double>(n) * ball.radius;
    std::vector<Vec> offsets;
    offsets.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec plus(static_cast<std::size_t>(n), 0.0);
        plus[static_cast<std::size_t>(i)] = reach;
        Vec minus(static_cast<std::size_t>(n), 0.0);
        minus[static_cast<std::size_t>(i)] = -reach;
        offsets.push_back(std::move(plus));
        offsets.push_back(std::move(minus));
    }
    return assemble_cover(CoverKind::CrossPolytope, ball, offsets, 0.0);
}

std::vector<Vec> regular_simplex_directions(int dim) {
    if (dim < 1) throw ValidationError("dim must be >= 1");
    const int n = dim;
    // Helmert row k (k = 1..n) over positions j = 0..n:
    //   j < k: 1/sqrt(k(k+1)),  j = k: -k/sqrt(k(k+1)),  j > k: 0.
    // Column i, rescaled by sqrt((n+1)/n), is the i-th vertex direction.
    const double scale = std::sqrt((n + 1.0) / n);
    std::vector<Vec> dirs(static_cast<std::size_t>(n + 1),
                          Vec(static_cast<std::size_t>(n), 0.0));
    for (int k = 1; k <= n; ++k) {
        const double denom = std::sqrt(static_cast<double>(k) * (k + 1.0));
        for (int j = 0; j <= n; ++j) {
            double entry = 0.0;
            if (j < k) {
                entry = 1.0 / denom;
            } else if (j == k) {
                entry = -static_cast<double>(k) / denom;
            }
            dirs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)] =
                scale * entry;
        }
    }
    return dirs;
}

Cover build_simplex_cover(const Ball& ball_to_cover) {
    const Ball ball = make_ball(ball_to_cover.center, ball_to_cover.radius);
    const int n = ball.dim();
    // Circumradius nR makes the insphere radius exactly R.
    const double circumradius = static_cast<double>(n) * ball.radius;
    std::vector<Vec> offsets;
    offsets.reserve(static_cast<std::size_t>(n) + 1);
    for (const Vec& u : regular_simplex_directions(n)) {
        offsets.push_back(scaled(u, circumradius));
    }
    return assemble_cover(CoverKind::Simplex, ball, offsets, 0.0);
}

namespace {

// --- Verified spherical covering for shell covers in n = 3, 4. ---
//
// Candidate grid: centers of a K x ... x K cell grid on each facet of the
// cube [-1,1]^n, projected to the sphere. For any unit u, its cube
// projection v = u/||u||_inf shares a facet with a cell center g at facet
// distance ||v - g|| <= t = (h/2) sqrt(n-1), h = 2/K. Central projection of
// the segment [v, g] to the sphere contracts length (every point of the
// segment has Euclidean norm >= 1), so angle(u, g) <= t. The code uses the
// slightly larger gamma = 2 asin(min(1, t/2)) >= t as the mesh bound.
//
// A greedy subset D covering every grid point within beta then covers every
// unit direction within gamma + beta (geodesic triangle inequality).

struct CoveringResult {
    std::vector<Vec> directions;
    double covering_radius_bound = 0.0;  // gamma + beta
};

double grid_mesh_angle(int K, int n) {
    const double t = (1.0 / static_cast<double>(K)) *
                     std::sqrt(static_cast<double>(n - 1));
    return 2.0 * std::asin(std::min(1.0, t / 2.0));
}

// Unit directions as a flat row-major array; millions of candidates fit
// without per-point allocation overhead.
std::vector<double> cube_surface_grid(int K, int n) {
    const double h = 2.0 / static_cast<double>(K);
    // Cell-center coordinates along one facet axis.
    std::vector<double> ticks(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        ticks[static_cast<std::size_t>(k)] = -1.0 + (k + 0.5) * h;
    }
    std::size_t per_facet = 1;
    for (int i = 0; i < n - 1; ++i) per_facet *= static_cast<std::size_t>(K);
    std::vector<double> grid;
    grid.reserve(2 * static_cast<std::size_t>(n) * per_facet *
                 static_cast<std::size_t>(n));
    Vec v(static_cast<std::size_t>(n));
    for (int axis = 0; axis < n; ++axis) {
        for (double sign : {1.0, -1.0}) {
            for (std::size_t cell = 0; cell < per_facet; ++cell) {
                v.assign(static_cast<std::size_t>(n), 0.0);
                v[static_cast<std::size_t>(axis)] = sign;
                std::size_t rest = cell;
                for (int j = 0; j < n; ++j) {
                    if (j == axis) continue;
                    v[static_cast<std::size_t>(j)] =
                        ticks[rest % static_cast<std::size_t>(K)];
                    rest /= static_cast<std::size_t>(K);
                }
                const double inv = 1.0 / norm(v);
                for (int j = 0; j < n; ++j) {
                    grid.push_back(v[static_cast<std::size_t>(j)] * inv);
                }
            }
        }
    }
    return grid;
}

CoveringResult greedy_verified_covering(int n, double delta_target) {
    if (!(delta_target > 0.0)) {
        throw CoverConstructionFailed(
            "shell cover: required covering angle is not positive");
    }
    // Coarsest grid whose provable mesh angle leaves room for the greedy
    // stage, capped so candidate generation stays desk-scale.
    const int k_cap = (n == 3) ? 1024 : 96;
    int K = 0;
    double gamma = 0.0;
    for (int k = 2; k <= k_cap; ++k) {
        gamma = grid_mesh_angle(k, n);
        if (gamma <= 0.35 * delta_target) {
            K = k;
            break;
        }
    }
    if (K == 0) {
        throw CoverConstructionFailed(
            "shell cover: target angle too small for the configured grid "
            "resolution (dimension " + std::to_string(n) + ")");
    }
    const std::vector<double> grid = cube_surface_grid(K, n);
    const std::size_t count = grid.size() / static_cast<std::size_t>(n);
    const double beta_target = 0.98 * (delta_target - gamma);
    const double cos_beta_target = std::cos(beta_target);
    const auto point = [&grid, n](std::size_t i) {
        return grid.data() + i * static_cast<std::size_t>(n);
    };

    std::vector<double> best_dot(count, -1.0);
    std::vector<Vec> chosen;
    // Each selection costs one pass over the grid; bound the total work so
    // ultra-fine coverings fail fast instead of running for hours.
    constexpr std::size_t kWorkBudget = 2'000'000'000;
    while (true) {
        // Farthest uncovered grid point; index order breaks ties.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < count; ++i) {
            if (best_dot[i] < best_dot[worst]) worst = i;
        }
        if (best_dot[worst] >= cos_beta_target) break;
        if ((chosen.size() + 1) * count > kWorkBudget) {
            throw CoverConstructionFailed(
                "shell cover: covering work limit exceeded at the required "
                "resolution");
        }
        const double* d = point(worst);
        chosen.emplace_back(d, d + n);
        for (std::size_t i = 0; i < count; ++i) {
            const double* g = point(i);
            double c = 0.0;
            for (int j = 0; j < n; ++j) c += g[j] * d[j];
            if (c > best_dot[i]) best_dot[i] = c;
        }
    }

    double worst_cos = 1.0;
    for (double c : best_dot) worst_cos = std::min(worst_cos, c);
    const double beta = std::acos(std::clamp(worst_cos, -1.0, 1.0));
    return CoveringResult{std::move(chosen), gamma + beta};
}

}  // namespace

Cover build_shell_cover(const Ball& ball_to_cover, double slack) {
    const Ball ball = make_ball(ball_to_cover.center, ball_to_cover.radius);
    if (!(slack > 0.0) || !std::isfinite(slack)) {
        throw ValidationError("slack must be positive and finite");
    }
    const int n = ball.dim();
    if (n < 2 || n > 4) {
        throw DimensionUnsupported(
            "shell covers are supported in dimensions 2..4 (got " +
            std::to_string(n) + ")");
    }
    const double R = ball.radius;
    const double rho = R + slack;  // single placement radius, maximal slack

    std::vector<Vec> offsets;
    if (n == 2) {
        // Smallest regular m-gon with rho cos(pi/m) >= R.
        const double angle = std::acos(std::min(1.0, R / rho));
        if (!(angle > 0.0)) {
            throw CoverConstructionFailed(
                "shell cover: slack is below floating-point resolution at "
                "this radius");
        }
        const double m_estimate = std::ceil(kPi / angle);
        if (!(m_estimate < 1e7)) {
            throw CoverConstructionFailed(
                "shell cover: required vertex count exceeds the configured "
                "limit");
        }
        int m = std::max(3, static_cast<int>(m_estimate));
        while (rho * std::cos(kPi / m) < R) ++m;
        offsets.reserve(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            const double theta = 2.0 * kPi * k / m;
            offsets.push_back({rho * std::cos(theta), rho * std::sin(theta)});
        }
    } else {
        const double delta_target = std::acos(std::min(1.0, R / rho));
        CoveringResult covering = greedy_verified_covering(n, delta_target);
        // The guarantee gate: every unit direction is within
        // covering_radius_bound of a chosen direction, so the support
        // function of the scaled set dominates R everywhere iff this holds.
        if (covering.covering_radius_bound >= kPi / 2.0 ||
            rho * std::cos(covering.covering_radius_bound) < R) {
            throw CoverConstructionFailed(
                "shell cover: covering could not be verified at the "
                "configured grid resolution");
        }
        offsets.reserve(covering.directions.size());
        for (const Vec& d : covering.directions) {
            offsets.push_back(scaled(d, rho));
        }
    }
    return assemble_cover(CoverKind::Shell, ball, offsets, slack);
}

double support_function(const std::vector<Vec>& points, const Vec& base,
                        const Vec& direction) {
    if (points.empty()) {
        throw EmptyPointSet("support function of an empty point set");
    }
    validate_vector(direction, "direction");
    if (std::abs(norm(direction) - 1.0) > 1e-12) {
        throw ValidationError(
            "direction must have unit Euclidean norm (tolerance 1e-12)");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& p : points) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            s += (p[i] - base[i]) * direction[i];
        }
        best = std::max(best, s);
    }
    return best;
}

ContainmentReport cover_containment_check(const Cover& cover,
                                          std::int64_t num_directions,
                                          std::uint64_t seed) {
    if (num_directions < 1) {
        throw ValidationError("num_directions must be >= 1");
    }
    const int n = cover.target.dim();
    ContainmentReport report;
    report.directions_tested = num_directions;
    report.seed = seed;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < num_directions; ++i) {
        const Vec u = rng::unit_direction(seed, static_cast<std::uint64_t>(i), n);
        const double margin =
            support_function(cover.points, cover.target.center, u) -
            cover.target.radius;
        if (margin < report.min_margin) {
            report.min_margin = margin;
            report.worst_direction = u;
        }
    }
    return report;
}

}  // namespace lipcert
