#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lipcert/function.hpp"
#include "lipcert/geometry.hpp"

namespace lipcert {

enum class FunctionKind {
    EuclideanNorm,
    Linear,
    Constant,
    Logistic,
    MaxAffine,
    Quadratic,
    ReciprocalAbs,
};

std::string to_string(FunctionKind kind);
FunctionKind function_kind_from_string(const std::string& name);

/// One affine piece b^T x + alpha of a max-affine function.
struct AffinePiece {
    Vec slope;
    double offset = 0.0;
};

/// Global Lipschitz modulus value: a finite nonnegative real or +infinity.
struct GlobalModulus {
    bool infinite = false;
    double value = 0.0;

    static GlobalModulus finite(double v) { return GlobalModulus{false, v}; }
    static GlobalModulus infinity() { return GlobalModulus{true, 0.0}; }
};

/// Serializable description of a catalog function.
///
/// kinds and parameters:
///   norm            f(x) = ||x||
///   linear          f(x) = b^T x + offset
///   constant        f(x) = c
///   logistic        f(x) = ln(1 + exp(b^T x))
///   maxaffine       f(x) = max_i (b_i^T x + alpha_i)
///   quadratic       f(x) = x^T Q x + c^T x, Q symmetric PSD
///   reciprocal-abs  f(x) = 1/|x| for x != 0, f(0) = 0 (dimension 1,
///                   non-convex; the negative test case)
struct FunctionSpec {
    FunctionKind kind = FunctionKind::EuclideanNorm;
    int dim = 1;
    std::string name;  ///< optional label

    Vec slope;                        ///< linear / logistic b
    double offset = 0.0;              ///< linear offset
    double constant = 0.0;            ///< constant c
    std::vector<AffinePiece> pieces;  ///< maxaffine
    std::vector<Vec> quad_matrix;     ///< quadratic Q, row major
    Vec quad_linear;                  ///< quadratic c

    bool convex() const { return kind != FunctionKind::ReciprocalAbs; }
    std::string id() const { return name.empty() ? to_string(kind) : name; }
};

// Checked in-code constructors.
FunctionSpec make_norm(int dim);
FunctionSpec make_linear(Vec b, double offset = 0.0);
FunctionSpec make_constant(int dim, double c);
FunctionSpec make_logistic(Vec b);
FunctionSpec make_maxaffine(std::vector<AffinePiece> pieces);
FunctionSpec make_quadratic(std::vector<Vec> q, Vec c = {});
FunctionSpec make_reciprocal_abs();

/// Validates every FunctionSpec invariant (dimension agreement, PSD Q to a
/// 1e-8 tolerance, >= 1 piece). Throws ValidationError with a field path.
void validate_spec(const FunctionSpec& spec);

/// f(x). The logistic kind uses the overflow-safe form
/// ln(1+e^t) = max(t,0) + ln(1+e^{-|t|}). Throws NonFiniteValue when the
/// result is not finite, ValidationError on dimension mismatch.
double evaluate(const FunctionSpec& spec, const Vec& x);

/// Gradient where smooth; for maxaffine a subgradient (the b of the
/// lowest-index maximizing piece). nullopt where undefined (norm at 0,
/// reciprocal-abs at 0).
std::optional<Vec> maybe_gradient(const FunctionSpec& spec, const Vec& x);

/// As maybe_gradient but throws GradientUnavailable instead of nullopt.
Vec gradient(const FunctionSpec& spec, const Vec& x);

/// Known global Lipschitz modulus: norm -> 1, linear/logistic -> ||b||,
/// constant -> 0, maxaffine -> max_i ||b_i||, quadratic -> infinite
/// (||c|| when Q = 0), reciprocal-abs -> nullopt (non-convex, outside the
/// radial characterization).
std::optional<GlobalModulus> analytic_global_modulus(const FunctionSpec& spec);

/// Unit directions attaining the radial limsup: +/- b/||b|| for linear and
/// logistic, each b_i/||b_i|| for maxaffine.
std::vector<Vec> direction_hints(const FunctionSpec& spec);

/// Catalog knowledge about a spec in one record.
struct AnalyticInfo {
    std::optional<GlobalModulus> global_modulus;
    bool gradient_available = false;
    std::vector<Vec> direction_hints;
};

AnalyticInfo analytic_info(const FunctionSpec& spec);

/// Parses the JSON function-spec document format. Field names: "kind", "b",
/// "offset", "c", "pieces", "alpha", "Q", "name", plus "dim" for the kinds
/// with no arrays to infer the dimension from. Unknown fields are rejected.
/// Throws ParseError (malformed) or ValidationError (invariant violation),
/// each naming the offending field.
FunctionSpec parse_function_spec(const std::string& document);
FunctionSpec function_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const FunctionSpec& spec);

/// Catalog row for listings: kind, modulus formula, convexity.
struct ZooEntry {
    std::string kind;
    std::string parameters;
    std::string modulus;
    bool convex = true;
};
std::vector<ZooEntry> zoo_catalog();

/// Function-interface adapter over a FunctionSpec.
class ZooFunction final : public Function {
public:
    explicit ZooFunction(FunctionSpec spec);

    const FunctionSpec& spec() const { return spec_; }
    int dim() const override { return spec_.dim; }
    double value(const Vec& x) const override { return evaluate(spec_, x); }
    std::optional<Vec> gradient_at(const Vec& x) const override {
        return maybe_gradient(spec_, x);
    }
    std::vector<Vec> direction_hints() const override {
        return lipcert::direction_hints(spec_);
    }
    std::string id() const override { return spec_.id(); }

private:
    FunctionSpec spec_;
};

}  // namespace lipcert
