#include <cmath>
#include <cstdint>

#include <doctest.h>

#include "lipcert/geometry.hpp"
#include "lipcert/rng.hpp"

using namespace lipcert;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// Independent containment oracle: dense seeded direction sampling of the
// support margin. Covers under test never see this sampling seed.
double sampled_min_margin(const Cover& cover, std::int64_t directions,
                          std::uint64_t seed) {
    return cover_containment_check(cover, directions, seed).min_margin;
}
}  // namespace

TEST_CASE("support function matches hand-computed values") {
    CHECK(support_function({{2, 0}, {0, 2}}, {0, 0}, {1, 0}) ==
          doctest::Approx(2.0));
    const double inv_sqrt2 = std::sqrt(0.5);
    CHECK(support_function({{2, 0}, {-2, 0}, {0, 2}, {0, -2}}, {0, 0},
                           {inv_sqrt2, inv_sqrt2}) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(support_function({{8}, {2}}, {5}, {-1}) == doctest::Approx(3.0));
}

TEST_CASE("support function rejects bad inputs") {
    CHECK_THROWS_AS(support_function({}, {0, 0}, {1, 0}), EmptyPointSet);
    CHECK_THROWS_AS(support_function({{1, 0}}, {0, 0}, {1, 1}),
                    ValidationError);
}

TEST_CASE("cross-polytope cover reproduces the closed form") {
    const Cover c2 = build_cross_polytope_cover(make_ball({0, 0}, 1.0));
    REQUIRE(c2.points.size() == 4);
    CHECK(c2.points[0] == Vec{2, 0});
    CHECK(c2.points[1] == Vec{-2, 0});
    CHECK(c2.points[2] == Vec{0, 2});
    CHECK(c2.points[3] == Vec{0, -2});
    const double inv_sqrt2 = std::sqrt(0.5);
    CHECK(support_function(c2.points, c2.target.center,
                           {inv_sqrt2, inv_sqrt2}) ==
          doctest::Approx(std::sqrt(2.0)));

    const Cover c1 = build_cross_polytope_cover(make_ball({5}, 3.0));
    REQUIRE(c1.points.size() == 2);
    CHECK(c1.points[0] == Vec{8});
    CHECK(c1.points[1] == Vec{2});

    const Cover c3 = build_cross_polytope_cover(make_ball({0, 0, 0}, 2.0));
    CHECK(c3.points.size() == 6);
    CHECK(c3.outer_radius == doctest::Approx(6.0));
    for (const Vec& p : c3.points) {
        CHECK(norm(p) == doctest::Approx(6.0));
    }
    CHECK(sampled_min_margin(c3, 20000, 11) >= -1e-12);
}

TEST_CASE("simplex directions form the canonical regular frame") {
    for (int n = 1; n <= 6; ++n) {
        const std::vector<Vec> dirs = regular_simplex_directions(n);
        REQUIRE(dirs.size() == static_cast<std::size_t>(n) + 1);
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            CHECK(norm(dirs[i]) == doctest::Approx(1.0).epsilon(1e-12));
            for (std::size_t j = i + 1; j < dirs.size(); ++j) {
                CHECK(dot(dirs[i], dirs[j]) ==
                      doctest::Approx(-1.0 / n).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("simplex cover: interval, inscribed disk, tetrahedron") {
    const Cover c1 = build_simplex_cover(make_ball({0}, 1.0));
    REQUIRE(c1.points.size() == 2);
    CHECK(c1.points[0][0] == doctest::Approx(1.0));
    CHECK(c1.points[1][0] == doctest::Approx(-1.0));

    // n=2, R=1: equilateral triangle with circumradius 2, inradius 1.
    const Cover c2 = build_simplex_cover(make_ball({0, 0}, 1.0));
    REQUIRE(c2.points.size() == 3);
    for (const Vec& p : c2.points) {
        CHECK(norm(p) == doctest::Approx(2.0));
    }
    CHECK(sampled_min_margin(c2, 100000, 5) >= -1e-12);

    const Cover c3 = build_simplex_cover(make_ball({1, 1, 1}, 0.5));
    REQUIRE(c3.points.size() == 4);
    const double edge = distance(c3.points[0], c3.points[1]);
    for (const Vec& p : c3.points) {
        CHECK(distance(p, c3.target.center) == doctest::Approx(1.5));
    }
    for (std::size_t i = 0; i < c3.points.size(); ++i) {
        for (std::size_t j = i + 1; j < c3.points.size(); ++j) {
            CHECK(distance(c3.points[i], c3.points[j]) ==
                  doctest::Approx(edge).epsilon(1e-12));
        }
    }
    CHECK(sampled_min_margin(c3, 100000, 5) >= -1e-12);
}

TEST_CASE("2-D shell cover is the minimal verified m-gon") {
    // rho cos(pi/8) = 1.1 * 0.92387... >= 1 while m=7 fails.
    const Cover c8 = build_shell_cover(make_ball({0, 0}, 1.0), 0.1);
    CHECK(c8.points.size() == 8);
    for (const Vec& p : c8.points) {
        CHECK(norm(p) == doctest::Approx(1.1).epsilon(1e-12));
    }
    const double margin = sampled_min_margin(c8, 100000, 17);
    CHECK(margin >= -1e-12);
    CHECK(margin == doctest::Approx(1.1 * std::cos(kPi / 8) - 1.0)
                        .epsilon(1e-3));

    const Cover c3 = build_shell_cover(make_ball({0, 0}, 1.0), 10.0);
    CHECK(c3.points.size() == 3);

    CHECK_THROWS_AS(
        build_shell_cover(make_ball({0, 0, 0, 0, 0}, 1.0), 0.5),
        DimensionUnsupported);
}

TEST_CASE("2-D shell m-gon is minimal across random radii and slacks") {
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t index = static_cast<std::uint64_t>(trial);
        const double radius = 0.1 + 20.0 * rng::uniform01(808, index, 0);
        const double slack =
            radius * (0.01 + 2.0 * rng::uniform01(808, index, 1));
        const Cover cover =
            build_shell_cover(make_ball({0, 0}, radius), slack);
        const double rho = radius + slack;
        const int m = static_cast<int>(cover.points.size());
        REQUIRE(m >= 3);
        CHECK(rho * std::cos(kPi / m) >= radius);
        if (m > 3) {
            CHECK(rho * std::cos(kPi / (m - 1)) < radius);
        }
    }
}

TEST_CASE("3-D and 4-D shell covers are verified and banded") {
    for (int n : {3, 4}) {
        Vec center(static_cast<std::size_t>(n), 0.5);
        const double radius = 2.0;
        const double slack = 0.25;
        const Cover cover = build_shell_cover(make_ball(center, radius), slack);
        CHECK(cover.points.size() >= static_cast<std::size_t>(n) + 1);
        for (const Vec& p : cover.points) {
            const double r = distance(p, center);
            CHECK(r >= radius * (1.0 - 1e-12));
            CHECK(r <= (radius + slack) * (1.0 + 1e-12));
        }
        CHECK(sampled_min_margin(cover, 100000, 23) >= -1e-12);
    }
}

TEST_CASE("containment margin of a degenerate singleton is -radius") {
    Cover degenerate;
    degenerate.kind = CoverKind::Shell;
    degenerate.target = make_ball({1, 2}, 3.0);
    degenerate.points = {degenerate.target.center};
    degenerate.outer_radius = 0.0;
    const ContainmentReport report =
        cover_containment_check(degenerate, 1000, 7);
    CHECK(report.min_margin == doctest::Approx(-3.0));
}

TEST_CASE("containment check margin matches the cross-polytope analysis") {
    const Cover cover = build_cross_polytope_cover(make_ball({0, 0}, 1.0));
    const ContainmentReport report = cover_containment_check(cover, 100000, 42);
    CHECK(report.min_margin >= 0.0);
    CHECK(report.min_margin ==
          doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-4));
    CHECK(report.directions_tested == 100000);
    // Identical seeds reproduce identical reports.
    const ContainmentReport again = cover_containment_check(cover, 100000, 42);
    CHECK(again.min_margin == report.min_margin);
    CHECK(again.worst_direction == report.worst_direction);
}

TEST_CASE("analytic covers dominate the target radius in every dimension") {
    std::uint64_t seed = 1000;
    for (int n = 1; n <= 5; ++n) {
        for (double radius : {0.3, 1.0, 7.5}) {
            Vec center(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) {
                center[static_cast<std::size_t>(k)] =
                    10.0 * rng::uniform01(seed, static_cast<std::uint64_t>(k),
                                          0) - 5.0;
            }
            ++seed;
            const Ball ball = make_ball(center, radius);
            CHECK(sampled_min_margin(build_cross_polytope_cover(ball), 100000,
                                     seed) >= -1e-12);
            CHECK(sampled_min_margin(build_simplex_cover(ball), 100000,
                                     seed) >= -1e-12);
        }
    }
}

TEST_CASE("shell construction fails rather than return an unverified cover") {
    // Slack far below what the configured grid resolution can certify.
    CHECK_THROWS_AS(build_shell_cover(make_ball({0, 0, 0, 0}, 1.0), 1e-9),
                    CoverConstructionFailed);
    // Slack below floating-point resolution at this radius.
    CHECK_THROWS_AS(build_shell_cover(make_ball({0, 0}, 1e16), 1e-3),
                    CoverConstructionFailed);
}

TEST_CASE("covers are translation equivariant, exactly") {
    // Points are assembled as center + offset with offsets independent of
    // the center, so translating an origin-centered cover reproduces the
    // translated cover bit for bit.
    const Vec shift{0.3, -1.7, 2.9};
    const Ball base = make_ball({0.0, 0.0, 0.0}, 1.25);
    const Ball moved = make_ball(shift, base.radius);

    const auto expect_translated = [&](const Cover& a, const Cover& b) {
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            for (std::size_t k = 0; k < shift.size(); ++k) {
                CHECK(b.points[i][k] == shift[k] + a.points[i][k]);
            }
        }
    };
    expect_translated(build_cross_polytope_cover(base),
                      build_cross_polytope_cover(moved));
    expect_translated(build_simplex_cover(base), build_simplex_cover(moved));
    expect_translated(build_shell_cover(base, 0.5),
                      build_shell_cover(moved, 0.5));
}

TEST_CASE("covers are scale equivariant about the center") {
    // Power-of-two scales make the equivariance exact in floating point.
    const Ball base = make_ball({0.0, 0.0}, 1.25);
    for (double c : {0.5, 2.0, 4.0}) {
        const Ball scaled_ball = make_ball(base.center, c * base.radius);

        const auto expect_scaled = [&](const Cover& a, const Cover& b) {
            REQUIRE(a.points.size() == b.points.size());
            for (std::size_t i = 0; i < a.points.size(); ++i) {
                for (std::size_t k = 0; k < base.center.size(); ++k) {
                    CHECK(b.points[i][k] == c * a.points[i][k]);
                }
            }
        };
        expect_scaled(build_cross_polytope_cover(base),
                      build_cross_polytope_cover(scaled_ball));
        expect_scaled(build_simplex_cover(base),
                      build_simplex_cover(scaled_ball));
        // Shell covers scale when the slack scales with the radius.
        expect_scaled(build_shell_cover(base, 0.5),
                      build_shell_cover(scaled_ball, c * 0.5));
    }
}

TEST_CASE("sampling streams: bounds, moments, order independence") {
    double sum = 0.0;
    double sum_sq = 0.0;
    const int count = 20000;
    for (int i = 0; i < count; ++i) {
        const double u = rng::uniform01(2024, static_cast<std::uint64_t>(i), 0);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double g = rng::gaussian(2024, static_cast<std::uint64_t>(i), 5);
        sum += g;
        sum_sq += g * g;
    }
    CHECK(sum / count == doctest::Approx(0.0).epsilon(0.03).scale(1.0));
    CHECK(sum_sq / count == doctest::Approx(1.0).epsilon(0.05));

    // Values are pure functions of (seed, index, slot): reading them in any
    // order, or twice, changes nothing.
    CHECK(rng::uniform01(2024, 7, 3) == rng::uniform01(2024, 7, 3));
    CHECK(rng::unit_direction(9, 4, 3) == rng::unit_direction(9, 4, 3));

    const Ball ball = make_ball({1.0, -2.0, 0.5}, 1.75);
    for (int i = 0; i < 5000; ++i) {
        const Vec p = rng::ball_point(55, static_cast<std::uint64_t>(i), ball);
        REQUIRE(distance(p, ball.center) <= ball.radius * (1.0 + 1e-12));
    }
    for (int i = 0; i < 200; ++i) {
        const Vec u = rng::unit_direction(55, static_cast<std::uint64_t>(i), 4);
        REQUIRE(std::abs(norm(u) - 1.0) <= 1e-12);
    }
}

TEST_CASE("ball validation") {
    CHECK_THROWS_AS(make_ball({}, 1.0), ValidationError);
    CHECK_THROWS_AS(make_ball({0, 0}, 0.0), ValidationError);
    CHECK_THROWS_AS(make_ball({0, 0}, -1.0), ValidationError);
    CHECK_THROWS_AS(build_shell_cover(make_ball({0, 0}, 1.0), 0.0),
                    ValidationError);
}
