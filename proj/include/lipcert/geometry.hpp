#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lipcert/errors.hpp"

namespace lipcert {

/// Point of R^n. Dimension is the length; all coordinates must be finite.
using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
double distance(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, double factor);
/// v / ||v||. Throws ValidationError when ||v|| is (near) zero.
Vec normalized(const Vec& v);
bool all_finite(const Vec& v);
/// Throws ValidationError unless v is nonempty with finite coordinates.
void validate_vector(const Vec& v, const std::string& field);

/// Euclidean ball with center x0 and radius r > 0.
struct Ball {
    Vec center;
    double radius = 0.0;

    int dim() const { return static_cast<int>(center.size()); }
};

/// Validating constructor: dim >= 1, finite center, radius > 0.
Ball make_ball(Vec center, double radius);

enum class CoverKind { CrossPolytope, Simplex, Shell };

std::string to_string(CoverKind kind);
CoverKind cover_kind_from_string(const std::string& name);

/// A finite point set S whose convex hull is guaranteed to contain the
/// target ball: B(x0, R) subset of conv(S).
struct Cover {
    CoverKind kind = CoverKind::CrossPolytope;
    std::vector<Vec> points;
    Ball target;
    double outer_radius = 0.0;  ///< max distance from x0 to any point of S
    double slack = 0.0;         ///< shell covers only (the epsilon)
};

/// The 2n points {x0 +/- nR e_i}. Containment of B(x0, R) holds for every
/// dimension: any x = x0 + R u with ||u|| <= 1 is the convex combination
/// sum_i (1/n) [t_i (x0 - nR e_i) + (1 - t_i)(x0 + nR e_i)].
Cover build_cross_polytope_cover(const Ball& ball_to_cover);

/// n+1 vertices of a regular n-simplex centered at x0 with circumradius nR.
/// A regular n-simplex with circumradius rho has insphere radius rho/n, so
/// the insphere coincides with the target ball.
Cover build_simplex_cover(const Ball& ball_to_cover);

/// Unit directions u_0..u_n of the canonical regular n-simplex, with
/// pairwise inner products -1/n. Frame: u_i = sqrt((n+1)/n) * (i-th column
/// of the n x (n+1) Helmert matrix), i.e. the n+1 standard basis vectors of
/// R^{n+1} centered and expressed in the Helmert basis of the hyperplane
/// orthogonal to (1,...,1).
std::vector<Vec> regular_simplex_directions(int dim);

/// Points at the single radius rho = R + slack whose directions form an
/// angular delta-covering of the unit sphere with rho cos(delta) >= R, so
/// support-function domination gives B(x0, R) subset of conv(S) subset of
/// B(x0, R + slack).
///
/// n = 2: the regular m-gon with smallest m such that rho cos(pi/m) >= R.
/// n = 3, 4: greedy covering over a deterministic cube-surface grid,
/// verified before returning (see shell_covering_verified in geometry.cpp);
/// throws CoverConstructionFailed rather than return an unverified cover.
/// Other dimensions: DimensionUnsupported.
Cover build_shell_cover(const Ball& ball_to_cover, double slack);

/// max over points p of <p - base, direction>. The direction must have unit
/// Euclidean norm within 1e-12. Throws EmptyPointSet on an empty set.
double support_function(const std::vector<Vec>& points, const Vec& base,
                        const Vec& direction);

/// Result of randomized containment verification: the minimal sampled
/// support margin support_S(u) - target.radius over unit directions u.
/// Nonnegative margins are necessary (not sufficient) evidence of
/// containment; the analytic covers carry construction proofs and use this
/// check as a regression test.
struct ContainmentReport {
    double min_margin = 0.0;
    Vec worst_direction;
    std::int64_t directions_tested = 0;
    std::uint64_t seed = 0;
};

/// Deterministic given seed; sample i draws from its own counter-based
/// stream, so any parallel schedule reproduces the serial report.
ContainmentReport cover_containment_check(const Cover& cover,
                                          std::int64_t num_directions,
                                          std::uint64_t seed);

}  // namespace lipcert
