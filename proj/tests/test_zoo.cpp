#include <cmath>
#include <string>

#include <doctest.h>

#include "lipcert/rng.hpp"
#include "lipcert/zoo.hpp"

using namespace lipcert;

namespace {

// Independent gradient oracle: central differences.
Vec fd_gradient(const FunctionSpec& spec, const Vec& x, double h = 1e-6) {
    Vec g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        Vec hi(x), lo(x);
        hi[k] += h;
        lo[k] -= h;
        g[k] = (evaluate(spec, hi) - evaluate(spec, lo)) / (2.0 * h);
    }
    return g;
}

}  // namespace

TEST_CASE("evaluate matches the catalog definitions") {
    // ln(1+e^4), cross-checked against the direct form.
    const FunctionSpec logistic = make_logistic({2});
    CHECK(evaluate(logistic, {2}) ==
          doctest::Approx(std::log(1.0 + std::exp(4.0))).epsilon(1e-14));
    CHECK(evaluate(logistic, {2}) == doctest::Approx(4.0181499279178094));

    const FunctionSpec abs_x1 =
        make_maxaffine({{{1, 0}, 0.0}, {{-1, 0}, 0.0}});
    CHECK(evaluate(abs_x1, {-3, 7}) == doctest::Approx(3.0));

    const FunctionSpec recip = make_reciprocal_abs();
    CHECK(evaluate(recip, {0}) == 0.0);
    CHECK(evaluate(recip, {0.25}) == doctest::Approx(4.0));
    CHECK(evaluate(recip, {-0.5}) == doctest::Approx(2.0));

    const FunctionSpec quad = make_quadratic({{1, 0}, {0, 1}});
    CHECK(evaluate(quad, {3, 4}) == doctest::Approx(25.0));

    CHECK(evaluate(make_norm(3), {2, 3, 6}) == doctest::Approx(7.0));
    CHECK(evaluate(make_linear({3, 4}, 1.0), {1, 1}) == doctest::Approx(8.0));
    CHECK(evaluate(make_constant(2, 7.0), {100, -100}) == 7.0);
}

TEST_CASE("evaluate rejects dimension mismatches") {
    CHECK_THROWS_AS(evaluate(make_norm(3), {1, 2}), ValidationError);
    CHECK_THROWS_AS(evaluate(make_logistic({1, 2}), {1, 2, 3}),
                    ValidationError);
}

TEST_CASE("logistic evaluation is overflow-safe at |b^T x| = 1e4") {
    const FunctionSpec logistic = make_logistic({1});
    const double big = evaluate(logistic, {1e4});
    CHECK(std::isfinite(big));
    CHECK(big == doctest::Approx(1e4));
    const double small = evaluate(logistic, {-1e4});
    CHECK(std::isfinite(small));
    CHECK(small >= 0.0);
    CHECK(small <= 1e-300);
}

TEST_CASE("gradients match the analytic formulas") {
    const Vec g1 = gradient(make_logistic({3, 4}), {0, 0});
    CHECK(g1[0] == doctest::Approx(1.5));
    CHECK(g1[1] == doctest::Approx(2.0));

    const Vec g2 = gradient(make_quadratic({{1, 0}, {0, 1}}), {1, 2});
    CHECK(g2[0] == doctest::Approx(2.0));
    CHECK(g2[1] == doctest::Approx(4.0));

    const Vec g3 = gradient(make_maxaffine({{{1, 0}, 0.0}, {{-1, 0}, 0.0}}),
                            {-3, 7});
    CHECK(g3[0] == doctest::Approx(-1.0));
    CHECK(g3[1] == doctest::Approx(0.0));

    CHECK_THROWS_AS(gradient(make_norm(2), {0, 0}), GradientUnavailable);
    CHECK_THROWS_AS(gradient(make_reciprocal_abs(), {0}),
                    GradientUnavailable);
}

TEST_CASE("gradient agrees with central differences at seeded points") {
    const std::vector<FunctionSpec> smooth = {
        make_logistic({1.5, -2.0, 0.5}),
        make_linear({3, -4, 1}, 2.0),
        make_quadratic({{2, 1, 0}, {1, 2, 0}, {0, 0, 1}}, {1, -1, 0.5}),
        make_norm(3),
    };
    const Ball region = make_ball({1.0, 1.0, 1.0}, 0.9);  // keeps norm off 0
    for (std::size_t s = 0; s < smooth.size(); ++s) {
        for (int i = 0; i < 1000; ++i) {
            const Vec x = rng::ball_point(977 + s, static_cast<std::uint64_t>(i),
                                          region);
            const Vec g = gradient(smooth[s], x);
            const Vec fd = fd_gradient(smooth[s], x);
            const double err = distance(g, fd);
            REQUIRE(err <= 1e-5 * (1.0 + norm(g)));
        }
    }
}

TEST_CASE("maxaffine subgradient is the slope of an active piece") {
    const FunctionSpec f = make_maxaffine(
        {{{1, 2}, 0.5}, {{-3, 0}, 1.0}, {{0, -1}, -0.25}});
    const Ball region = make_ball({0.0, 0.0}, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const Vec x = rng::ball_point(31337, static_cast<std::uint64_t>(i),
                                      region);
        const Vec g = gradient(f, x);
        const double fx = evaluate(f, x);
        bool active = false;
        for (const AffinePiece& piece : f.pieces) {
            if (piece.slope == g) {
                active = std::abs(dot(piece.slope, x) + piece.offset - fx) <=
                         1e-12 * (1.0 + std::abs(fx));
            }
            if (active) break;
        }
        REQUIRE(active);
    }
}

TEST_CASE("analytic global moduli match the catalog") {
    CHECK(analytic_global_modulus(make_norm(4))->value == 1.0);
    CHECK(analytic_global_modulus(make_logistic({3, 4}))->value ==
          doctest::Approx(5.0));
    CHECK(analytic_global_modulus(
              make_maxaffine({{{1, 0}, 0.0}, {{0, -2}, 0.0}}))
              ->value == doctest::Approx(2.0));
    CHECK(analytic_global_modulus(make_constant(1, 7.0))->value == 0.0);
    CHECK(analytic_global_modulus(make_linear({3, 4}))->value ==
          doctest::Approx(5.0));
    CHECK(analytic_global_modulus(make_quadratic({{1, 0}, {0, 1}}))->infinite);
    CHECK(!analytic_global_modulus(make_reciprocal_abs()).has_value());
    // Degenerate quadratic with Q = 0 is exactly linear.
    const auto degenerate =
        analytic_global_modulus(make_quadratic({{0, 0}, {0, 0}}, {3, 4}));
    CHECK(!degenerate->infinite);
    CHECK(degenerate->value == doctest::Approx(5.0));
}

TEST_CASE("analytic info aggregates modulus, gradient flag and hints") {
    const AnalyticInfo info = analytic_info(make_logistic({3, 4}));
    REQUIRE(info.global_modulus.has_value());
    CHECK(info.global_modulus->value == doctest::Approx(5.0));
    CHECK(info.gradient_available);
    CHECK(info.direction_hints.size() == 2);
    CHECK(!analytic_info(make_reciprocal_abs()).global_modulus.has_value());
}

TEST_CASE("direction hints are unit vectors along the growth directions") {
    const std::vector<Vec> hints = direction_hints(make_logistic({3, 4}));
    REQUIRE(hints.size() == 2);
    CHECK(hints[0][0] == doctest::Approx(0.6));
    CHECK(hints[0][1] == doctest::Approx(0.8));
    CHECK(hints[1][0] == doctest::Approx(-0.6));
    const std::vector<Vec> ma_hints = direction_hints(
        make_maxaffine({{{1, 0}, 0.0}, {{0, -2}, 0.0}}));
    REQUIRE(ma_hints.size() == 2);
    CHECK(norm(ma_hints[0]) == doctest::Approx(1.0));
    CHECK(direction_hints(make_norm(2)).empty());
}

TEST_CASE("parse_function_spec round-trips the documented examples") {
    const FunctionSpec logistic =
        parse_function_spec(R"({"kind":"logistic","b":[3,4]})");
    CHECK(logistic.kind == FunctionKind::Logistic);
    CHECK(logistic.dim == 2);
    CHECK(logistic.slope == Vec{3, 4});

    const FunctionSpec abs_x1 = parse_function_spec(
        R"({"kind":"maxaffine","pieces":[{"b":[1,0],"alpha":0},{"b":[-1,0],"alpha":0}]})");
    CHECK(abs_x1.kind == FunctionKind::MaxAffine);
    CHECK(evaluate(abs_x1, {-3, 7}) == doctest::Approx(3.0));

    for (const FunctionSpec& spec :
         {make_norm(3), make_linear({1, -2}, 0.5), make_constant(2, 7.0),
          make_logistic({3, 4}),
          make_maxaffine({{{1, 2}, 0.5}, {{-3, 0}, 1.0}}),
          make_quadratic({{2, 1}, {1, 2}}, {0.5, -0.5}),
          make_reciprocal_abs()}) {
        const FunctionSpec back = parse_function_spec(to_json(spec).dump());
        CHECK(back.kind == spec.kind);
        CHECK(back.dim == spec.dim);
        CHECK(to_json(back) == to_json(spec));
    }
}

TEST_CASE("parser rejects PSD violations with the offending eigenvalue") {
    try {
        parse_function_spec(R"({"kind":"quadratic","Q":[[1,2],[2,1]],"c":[0,0]})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string message = e.what();
        CHECK(message.find("Q") != std::string::npos);
        const std::size_t at = message.find("eigenvalue ");
        REQUIRE(at != std::string::npos);
        const double reported = std::stod(message.substr(at + 11));
        CHECK(reported == doctest::Approx(-1.0).epsilon(1e-9));
    }
    // Nearly-PSD round-trip noise passes the 1e-8 tolerance.
    CHECK_NOTHROW(parse_function_spec(
        R"({"kind":"quadratic","Q":[[1.0,1.0],[1.0,0.9999999999]],"c":[0,0]})"));
}

TEST_CASE("parser error paths") {
    CHECK_THROWS_AS(parse_function_spec("not json"), ParseError);
    CHECK_THROWS_AS(parse_function_spec(R"({"b":[1,2]})"), ParseError);
    CHECK_THROWS_AS(parse_function_spec(R"({"kind":"nope"})"), ValidationError);
    CHECK_THROWS_AS(parse_function_spec(R"({"kind":"logistic"})"), ParseError);
    CHECK_THROWS_AS(
        parse_function_spec(R"({"kind":"logistic","b":[1],"extra":1})"),
        ParseError);
    CHECK_THROWS_AS(parse_function_spec(R"({"kind":"norm"})"), ValidationError);
    CHECK_THROWS_AS(parse_function_spec(R"({"kind":"constant","c":7})"),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_function_spec(R"({"kind":"maxaffine","pieces":[]})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_function_spec(
            R"({"kind":"maxaffine","pieces":[{"b":[1,0]},{"b":[1,0,0]}]})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_function_spec(R"({"kind":"quadratic","Q":[[1,0],[0,1]],"c":[1]})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_function_spec(R"({"kind":"logistic","b":[3,4],"dim":3})"),
        ValidationError);
    CHECK_THROWS_AS(parse_function_spec(R"({"kind":"reciprocal-abs","dim":2})"),
                    ValidationError);
    // Field paths point at the offending field.
    try {
        parse_function_spec(
            R"({"kind":"maxaffine","pieces":[{"b":[1,0],"beta":2}]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("pieces[0].beta") !=
              std::string::npos);
    }
}

TEST_CASE("zoo catalog lists all seven kinds") {
    const std::vector<ZooEntry> catalog = zoo_catalog();
    CHECK(catalog.size() == 7);
    int convex_count = 0;
    for (const ZooEntry& entry : catalog) {
        if (entry.convex) ++convex_count;
    }
    CHECK(convex_count == 6);
}
