#include "lipcert/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace lipcert {

namespace {

using nlohmann::json;

double checked_finite(double v, const FunctionSpec& spec) {
    if (!std::isfinite(v)) {
        throw NonFiniteValue("evaluation of '" + spec.id() +
                             "' produced a non-finite value");
    }
    return v;
}

void check_dim(const FunctionSpec& spec, const Vec& x) {
    validate_vector(x, "x");
    if (static_cast<int>(x.size()) != spec.dim) {
        throw ValidationError("x: dimension " + std::to_string(x.size()) +
                              " does not match function dimension " +
                              std::to_string(spec.dim));
    }
}

/// Numerically stable sigmoid 1/(1+e^{-t}).
double sigmoid(double t) {
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double max_abs_entry(const std::vector<Vec>& m) {
    double best = 0.0;
    for (const Vec& row : m) {
        for (double v : row) best = std::max(best, std::abs(v));
    }
    return best;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations. Small
/// matrices only; plenty for PSD validation of parsed specs.
std::vector<double> symmetric_eigenvalues(std::vector<Vec> a) {
    const std::size_t n = a.size();
    const double scale = std::max(1.0, max_abs_entry(a));
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        }
        if (off < 1e-30 * scale * scale) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double app = a[p][p];
                const double aqq = a[q][q];
                const double apq = a[p][q];
                a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[p][q] = a[q][p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = a[p][k] = c * akp - s * akq;
                    a[k][q] = a[q][k] = s * akp + c * akq;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    return eig;
}

}  // namespace

std::string to_string(FunctionKind kind) {
    switch (kind) {
        case FunctionKind::EuclideanNorm: return "norm";
        case FunctionKind::Linear: return "linear";
        case FunctionKind::Constant: return "constant";
        case FunctionKind::Logistic: return "logistic";
        case FunctionKind::MaxAffine: return "maxaffine";
        case FunctionKind::Quadratic: return "quadratic";
        case FunctionKind::ReciprocalAbs: return "reciprocal-abs";
    }
    return "norm";
}

FunctionKind function_kind_from_string(const std::string& name) {
    if (name == "norm") return FunctionKind::EuclideanNorm;
    if (name == "linear") return FunctionKind::Linear;
    if (name == "constant") return FunctionKind::Constant;
    if (name == "logistic") return FunctionKind::Logistic;
    if (name == "maxaffine") return FunctionKind::MaxAffine;
    if (name == "quadratic") return FunctionKind::Quadratic;
    if (name == "reciprocal-abs") return FunctionKind::ReciprocalAbs;
    throw ValidationError("kind: unknown function kind '" + name + "'");
}

void validate_spec(const FunctionSpec& spec) {
    if (spec.dim < 1) {
        throw ValidationError("dim: must be >= 1");
    }
    const auto expect_dim = [&](const Vec& v, const std::string& field) {
        validate_vector(v, field);
        if (static_cast<int>(v.size()) != spec.dim) {
            throw ValidationError(field + ": dimension " +
                                  std::to_string(v.size()) +
                                  " does not match dim " +
                                  std::to_string(spec.dim));
        }
    };
    switch (spec.kind) {
        case FunctionKind::EuclideanNorm:
        case FunctionKind::Constant:
            break;
        case FunctionKind::ReciprocalAbs:
            if (spec.dim != 1) {
                throw ValidationError("dim: reciprocal-abs is univariate");
            }
            break;
        case FunctionKind::Linear:
        case FunctionKind::Logistic:
            expect_dim(spec.slope, "b");
            break;
        case FunctionKind::MaxAffine: {
            if (spec.pieces.empty()) {
                throw ValidationError("pieces: must contain at least one piece");
            }
            for (std::size_t i = 0; i < spec.pieces.size(); ++i) {
                expect_dim(spec.pieces[i].slope,
                           "pieces[" + std::to_string(i) + "].b");
                if (!std::isfinite(spec.pieces[i].offset)) {
                    throw ValidationError("pieces[" + std::to_string(i) +
                                          "].alpha: must be finite");
                }
            }
            break;
        }
        case FunctionKind::Quadratic: {
            if (spec.quad_matrix.size() != static_cast<std::size_t>(spec.dim)) {
                throw ValidationError("Q: must be a square " +
                                      std::to_string(spec.dim) + "x" +
                                      std::to_string(spec.dim) + " matrix");
            }
            for (std::size_t i = 0; i < spec.quad_matrix.size(); ++i) {
                expect_dim(spec.quad_matrix[i], "Q[" + std::to_string(i) + "]");
            }
            const double tol = 1e-8 * (1.0 + max_abs_entry(spec.quad_matrix));
            for (std::size_t i = 0; i < spec.quad_matrix.size(); ++i) {
                for (std::size_t j = i + 1; j < spec.quad_matrix.size(); ++j) {
                    if (std::abs(spec.quad_matrix[i][j] -
                                 spec.quad_matrix[j][i]) > tol) {
                        throw ValidationError(
                            "Q: not symmetric at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
                    }
                }
            }
            const std::vector<double> eigs =
                symmetric_eigenvalues(spec.quad_matrix);
            const double min_eig = *std::min_element(eigs.begin(), eigs.end());
            if (min_eig < -tol) {
                throw ValidationError("Q: eigenvalue " + json(min_eig).dump() +
                                      " < 0 (must be positive semidefinite)");
            }
            expect_dim(spec.quad_linear, "c");
            break;
        }
    }
    if (!std::isfinite(spec.offset)) {
        throw ValidationError("offset: must be finite");
    }
    if (!std::isfinite(spec.constant)) {
        throw ValidationError("c: must be finite");
    }
}

FunctionSpec make_norm(int dim) {
    FunctionSpec spec;
    spec.kind = FunctionKind::EuclideanNorm;
    spec.dim = dim;
    validate_spec(spec);
    return spec;
}

FunctionSpec make_linear(Vec b, double offset) {
    FunctionSpec spec;
    spec.kind = FunctionKind::Linear;
    spec.dim = static_cast<int>(b.size());
    spec.slope = std::move(b);
    spec.offset = offset;
    validate_spec(spec);
    return spec;
}

FunctionSpec make_constant(int dim, double c) {
    FunctionSpec spec;
    spec.kind = FunctionKind::Constant;
    spec.dim = dim;
    spec.constant = c;
    validate_spec(spec);
    return spec;
}

FunctionSpec make_logistic(Vec b) {
    FunctionSpec spec;
    spec.kind = FunctionKind::Logistic;
    spec.dim = static_cast<int>(b.size());
    spec.slope = std::move(b);
    validate_spec(spec);
    return spec;
}

FunctionSpec make_maxaffine(std::vector<AffinePiece> pieces) {
    FunctionSpec spec;
    spec.kind = FunctionKind::MaxAffine;
    spec.dim = pieces.empty() ? 1 : static_cast<int>(pieces[0].slope.size());
    spec.pieces = std::move(pieces);
    validate_spec(spec);
    return spec;
}

FunctionSpec make_quadratic(std::vector<Vec> q, Vec c) {
    FunctionSpec spec;
    spec.kind = FunctionKind::Quadratic;
    spec.dim = static_cast<int>(q.size());
    spec.quad_matrix = std::move(q);
    if (c.empty()) c.assign(static_cast<std::size_t>(spec.dim), 0.0);
    spec.quad_linear = std::move(c);
    validate_spec(spec);
    return spec;
}

FunctionSpec make_reciprocal_abs() {
    FunctionSpec spec;
    spec.kind = FunctionKind::ReciprocalAbs;
    spec.dim = 1;
    validate_spec(spec);
    return spec;
}

double evaluate(const FunctionSpec& spec, const Vec& x) {
    check_dim(spec, x);
    switch (spec.kind) {
        case FunctionKind::EuclideanNorm:
            return checked_finite(norm(x), spec);
        case FunctionKind::Linear:
            return checked_finite(dot(spec.slope, x) + spec.offset, spec);
        case FunctionKind::Constant:
            return spec.constant;
        case FunctionKind::Logistic: {
            // ln(1+e^t) = max(t,0) + ln(1+e^{-|t|}); finite for any t.
            const double t = dot(spec.slope, x);
            return checked_finite(
                std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))), spec);
        }
        case FunctionKind::MaxAffine: {
            double best = -std::numeric_limits<double>::infinity();
            for (const AffinePiece& piece : spec.pieces) {
                best = std::max(best, dot(piece.slope, x) + piece.offset);
            }
            return checked_finite(best, spec);
        }
        case FunctionKind::Quadratic: {
            double quad = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                quad += x[i] * dot(spec.quad_matrix[i], x);
            }
            return checked_finite(quad + dot(spec.quad_linear, x), spec);
        }
        case FunctionKind::ReciprocalAbs:
            if (x[0] == 0.0) return 0.0;
            return checked_finite(1.0 / std::abs(x[0]), spec);
    }
    throw Error("unreachable function kind");
}

std::optional<Vec> maybe_gradient(const FunctionSpec& spec, const Vec& x) {
    check_dim(spec, x);
    switch (spec.kind) {
        case FunctionKind::EuclideanNorm: {
            const double n = norm(x);
            if (n == 0.0) return std::nullopt;
            return scaled(x, 1.0 / n);
        }
        case FunctionKind::Linear:
            return spec.slope;
        case FunctionKind::Constant:
            return Vec(x.size(), 0.0);
        case FunctionKind::Logistic:
            return scaled(spec.slope, sigmoid(dot(spec.slope, x)));
        case FunctionKind::MaxAffine: {
            // Subgradient: the b of a maximizing piece, lowest index first.
            std::size_t best = 0;
            double best_value = dot(spec.pieces[0].slope, x) +
                                spec.pieces[0].offset;
            for (std::size_t i = 1; i < spec.pieces.size(); ++i) {
                const double v = dot(spec.pieces[i].slope, x) +
                                 spec.pieces[i].offset;
                if (v > best_value) {
                    best_value = v;
                    best = i;
                }
            }
            return spec.pieces[best].slope;
        }
        case FunctionKind::Quadratic: {
            Vec g(x.size(), 0.0);
            for (std::size_t i = 0; i < x.size(); ++i) {
                g[i] = 2.0 * dot(spec.quad_matrix[i], x) + spec.quad_linear[i];
            }
            return g;
        }
        case FunctionKind::ReciprocalAbs: {
            if (x[0] == 0.0) return std::nullopt;
            const double s = x[0] > 0.0 ? 1.0 : -1.0;
            return Vec{-s / (x[0] * x[0])};
        }
    }
    return std::nullopt;
}

Vec gradient(const FunctionSpec& spec, const Vec& x) {
    std::optional<Vec> g = maybe_gradient(spec, x);
    if (!g) {
        throw GradientUnavailable("gradient of '" + spec.id() +
                                  "' is not defined at the given point");
    }
    return *std::move(g);
}

std::optional<GlobalModulus> analytic_global_modulus(const FunctionSpec& spec) {
    switch (spec.kind) {
        case FunctionKind::EuclideanNorm:
            return GlobalModulus::finite(1.0);
        case FunctionKind::Linear:
        case FunctionKind::Logistic:
            return GlobalModulus::finite(norm(spec.slope));
        case FunctionKind::Constant:
            return GlobalModulus::finite(0.0);
        case FunctionKind::MaxAffine: {
            double best = 0.0;
            for (const AffinePiece& piece : spec.pieces) {
                best = std::max(best, norm(piece.slope));
            }
            return GlobalModulus::finite(best);
        }
        case FunctionKind::Quadratic:
            if (max_abs_entry(spec.quad_matrix) == 0.0) {
                return GlobalModulus::finite(norm(spec.quad_linear));
            }
            return GlobalModulus::infinity();
        case FunctionKind::ReciprocalAbs:
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<Vec> direction_hints(const FunctionSpec& spec) {
    std::vector<Vec> hints;
    const auto push_unit = [&hints](const Vec& v, bool both_signs) {
        const double n = norm(v);
        if (n <= 1e-300) return;
        hints.push_back(scaled(v, 1.0 / n));
        if (both_signs) hints.push_back(scaled(v, -1.0 / n));
    };
    switch (spec.kind) {
        case FunctionKind::Linear:
        case FunctionKind::Logistic:
            push_unit(spec.slope, true);
            break;
        case FunctionKind::MaxAffine:
            for (const AffinePiece& piece : spec.pieces) {
                push_unit(piece.slope, false);
            }
            break;
        default:
            break;
    }
    return hints;
}

AnalyticInfo analytic_info(const FunctionSpec& spec) {
    AnalyticInfo info;
    info.global_modulus = analytic_global_modulus(spec);
    // Every kind implements gradient(); norm and reciprocal-abs lack one at
    // the origin only.
    info.gradient_available = true;
    info.direction_hints = direction_hints(spec);
    return info;
}

namespace {

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        throw ParseError(path + ": expected an object");
    }
}

void check_allowed_keys(const json& obj, const std::set<std::string>& allowed,
                        const std::string& path) {
    for (const auto& item : obj.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw ParseError(path + item.key() + ": unknown field");
        }
    }
}

double parse_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ParseError(path + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ValidationError(path + ": must be finite");
    }
    return v;
}

Vec parse_vec(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(path + ": expected a nonempty array of numbers");
    }
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v.push_back(parse_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return v;
}

int parse_explicit_dim(const json& doc) {
    const json& d = doc.at("dim");
    if (!d.is_number_integer() || d.get<std::int64_t>() < 1) {
        throw ValidationError("dim: must be a positive integer");
    }
    return static_cast<int>(d.get<std::int64_t>());
}

}  // namespace

FunctionSpec function_spec_from_json(const json& doc) {
    expect_object(doc, "document");
    if (!doc.contains("kind")) {
        throw ParseError("kind: missing required field");
    }
    if (!doc.at("kind").is_string()) {
        throw ParseError("kind: expected a string");
    }
    FunctionSpec spec;
    spec.kind = function_kind_from_string(doc.at("kind").get<std::string>());
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) {
            throw ParseError("name: expected a string");
        }
        spec.name = doc.at("name").get<std::string>();
    }

    switch (spec.kind) {
        case FunctionKind::EuclideanNorm: {
            check_allowed_keys(doc, {"kind", "dim", "name"}, "");
            if (!doc.contains("dim")) {
                throw ValidationError(
                    "dim: required for kind 'norm' (no array field to infer "
                    "the dimension from)");
            }
            spec.dim = parse_explicit_dim(doc);
            break;
        }
        case FunctionKind::Constant: {
            check_allowed_keys(doc, {"kind", "c", "dim", "name"}, "");
            if (!doc.contains("c")) {
                throw ParseError("c: missing required field");
            }
            spec.constant = parse_number(doc.at("c"), "c");
            if (!doc.contains("dim")) {
                throw ValidationError(
                    "dim: required for kind 'constant' (no array field to "
                    "infer the dimension from)");
            }
            spec.dim = parse_explicit_dim(doc);
            break;
        }
        case FunctionKind::Linear: {
            check_allowed_keys(doc, {"kind", "b", "offset", "dim", "name"}, "");
            if (!doc.contains("b")) {
                throw ParseError("b: missing required field");
            }
            spec.slope = parse_vec(doc.at("b"), "b");
            spec.dim = static_cast<int>(spec.slope.size());
            if (doc.contains("offset")) {
                spec.offset = parse_number(doc.at("offset"), "offset");
            }
            break;
        }
        case FunctionKind::Logistic: {
            check_allowed_keys(doc, {"kind", "b", "dim", "name"}, "");
            if (!doc.contains("b")) {
                throw ParseError("b: missing required field");
            }
            spec.slope = parse_vec(doc.at("b"), "b");
            spec.dim = static_cast<int>(spec.slope.size());
            break;
        }
        case FunctionKind::MaxAffine: {
            check_allowed_keys(doc, {"kind", "pieces", "dim", "name"}, "");
            if (!doc.contains("pieces") || !doc.at("pieces").is_array()) {
                throw ParseError("pieces: expected an array of pieces");
            }
            const json& pieces = doc.at("pieces");
            if (pieces.empty()) {
                throw ValidationError("pieces: must contain at least one piece");
            }
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                const std::string path = "pieces[" + std::to_string(i) + "].";
                expect_object(pieces[i], "pieces[" + std::to_string(i) + "]");
                check_allowed_keys(pieces[i], {"b", "alpha"}, path);
                if (!pieces[i].contains("b")) {
                    throw ParseError(path + "b: missing required field");
                }
                AffinePiece piece;
                piece.slope = parse_vec(pieces[i].at("b"), path + "b");
                if (pieces[i].contains("alpha")) {
                    piece.offset =
                        parse_number(pieces[i].at("alpha"), path + "alpha");
                }
                spec.pieces.push_back(std::move(piece));
            }
            spec.dim = static_cast<int>(spec.pieces[0].slope.size());
            break;
        }
        case FunctionKind::Quadratic: {
            check_allowed_keys(doc, {"kind", "Q", "c", "dim", "name"}, "");
            if (!doc.contains("Q") || !doc.at("Q").is_array() ||
                doc.at("Q").empty()) {
                throw ParseError("Q: expected a nonempty array of rows");
            }
            const json& q = doc.at("Q");
            for (std::size_t i = 0; i < q.size(); ++i) {
                spec.quad_matrix.push_back(
                    parse_vec(q[i], "Q[" + std::to_string(i) + "]"));
            }
            spec.dim = static_cast<int>(spec.quad_matrix.size());
            if (doc.contains("c")) {
                spec.quad_linear = parse_vec(doc.at("c"), "c");
            } else {
                spec.quad_linear.assign(static_cast<std::size_t>(spec.dim), 0.0);
            }
            break;
        }
        case FunctionKind::ReciprocalAbs: {
            check_allowed_keys(doc, {"kind", "dim", "name"}, "");
            spec.dim = 1;
            break;
        }
    }

    if (doc.contains("dim")) {
        const int declared = parse_explicit_dim(doc);
        if (declared != spec.dim) {
            throw ValidationError(
                "dim: declared dimension " + std::to_string(declared) +
                " does not match inferred dimension " +
                std::to_string(spec.dim));
        }
    }
    validate_spec(spec);
    return spec;
}

FunctionSpec parse_function_spec(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("document: ") + e.what());
    }
    return function_spec_from_json(doc);
}

nlohmann::json to_json(const FunctionSpec& spec) {
    json doc;
    doc["kind"] = to_string(spec.kind);
    if (!spec.name.empty()) doc["name"] = spec.name;
    switch (spec.kind) {
        case FunctionKind::EuclideanNorm:
            doc["dim"] = spec.dim;
            break;
        case FunctionKind::Linear:
            doc["b"] = spec.slope;
            doc["offset"] = spec.offset;
            break;
        case FunctionKind::Constant:
            doc["c"] = spec.constant;
            doc["dim"] = spec.dim;
            break;
        case FunctionKind::Logistic:
            doc["b"] = spec.slope;
            break;
        case FunctionKind::MaxAffine: {
            json pieces = json::array();
            for (const AffinePiece& piece : spec.pieces) {
                pieces.push_back({{"b", piece.slope}, {"alpha", piece.offset}});
            }
            doc["pieces"] = std::move(pieces);
            break;
        }
        case FunctionKind::Quadratic:
            doc["Q"] = spec.quad_matrix;
            doc["c"] = spec.quad_linear;
            break;
        case FunctionKind::ReciprocalAbs:
            break;
    }
    return doc;
}

std::vector<ZooEntry> zoo_catalog() {
    return {
        {"norm", "dim", "1", true},
        {"linear", "b, offset", "||b||", true},
        {"constant", "c, dim", "0", true},
        {"logistic", "b", "||b||", true},
        {"maxaffine", "pieces[{b, alpha}]", "max_i ||b_i||", true},
        {"quadratic", "Q, c", "infinite (||c|| when Q = 0)", true},
        {"reciprocal-abs", "", "n/a (non-convex)", false},
    };
}

ZooFunction::ZooFunction(FunctionSpec spec) : spec_(std::move(spec)) {
    validate_spec(spec_);
}

}  // namespace lipcert
