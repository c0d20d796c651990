#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipcert/geometry.hpp"

namespace lipcert {

/// Black-box evaluation interface consumed by the estimator and the
/// verification oracles. Implementations must be pure and safe to call
/// concurrently.
class Function {
public:
    virtual ~Function() = default;

    virtual int dim() const = 0;

    /// f(x). Must throw NonFiniteValue when the result is not finite.
    virtual double value(const Vec& x) const = 0;

    /// Gradient (or a subgradient element) when one is defined at x.
    virtual std::optional<Vec> gradient_at(const Vec& /*x*/) const {
        return std::nullopt;
    }

    /// Unit directions along which the radial ratio |f(x)|/||x|| attains its
    /// limsup, when known. Random sampling alone underestimates the modulus
    /// of functions whose growth concentrates along few directions.
    virtual std::vector<Vec> direction_hints() const { return {}; }

    virtual std::string id() const { return "function"; }
};

/// Adapter for in-code callables (used by tests and custom extensions).
class CallableFunction final : public Function {
public:
    CallableFunction(int dim, std::function<double(const Vec&)> fn,
                     std::string id = "callable")
        : dim_(dim), fn_(std::move(fn)), id_(std::move(id)) {}

    int dim() const override { return dim_; }

    double value(const Vec& x) const override {
        const double v = fn_(x);
        if (!std::isfinite(v)) {
            throw NonFiniteValue("function '" + id_ +
                                 "' produced a non-finite value");
        }
        return v;
    }

    std::string id() const override { return id_; }

    CallableFunction& with_hints(std::vector<Vec> hints) {
        hints_ = std::move(hints);
        return *this;
    }

    std::vector<Vec> direction_hints() const override { return hints_; }

private:
    int dim_;
    std::function<double(const Vec&)> fn_;
    std::string id_;
    std::vector<Vec> hints_;
};

}  // namespace lipcert
