#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qstancu/errors.hpp"
#include "qstancu/scalar.hpp"

namespace qstancu {

/// A function phi on [0,1], evaluable at the operator node families
/// [k]_q/[n]_q and 1 - q^k. Monomials house the e_m test functions;
/// polynomials stay exactly evaluable in rational mode; builtins
/// (exp, sin, |t - c|) are float-only.
template <ScalarType S>
class SampledFunction {
public:
    enum class Kind { monomial, polynomial, builtin };

    static SampledFunction monomial(int order) {
        if (order < 0) throw invalid_domain_error("monomial order must be >= 0");
        SampledFunction f;
        f.kind_ = Kind::monomial;
        f.order_ = order;
        f.label_ = "e" + std::to_string(order);
        return f;
    }

    /// Coefficients in ascending order: c0 + c1 t + c2 t^2 + ...
    static SampledFunction polynomial(std::vector<S> coeffs) {
        if (coeffs.empty()) coeffs.push_back(S(0));
        SampledFunction f;
        f.kind_ = Kind::polynomial;
        f.coeffs_ = std::move(coeffs);
        f.label_ = "poly";
        return f;
    }

    static SampledFunction builtin(const std::string& name, double param = 0.0)
        requires std::same_as<S, double>
    {
        SampledFunction f;
        f.kind_ = Kind::builtin;
        f.label_ = name;
        if (name == "exp") {
            f.builtin_ = [](double t) { return std::exp(t); };
            f.sup_norm_ = std::exp(1.0);
        } else if (name == "sin") {
            f.builtin_ = [](double t) { return std::sin(t); };
            f.sup_norm_ = 1.0;
        } else if (name == "absshift") {
            f.builtin_ = [param](double t) { return std::fabs(t - param); };
            f.sup_norm_ = std::max(std::fabs(param), std::fabs(1.0 - param));
            f.label_ = "absshift:" + std::to_string(param);
        } else {
            throw parse_error("unknown builtin function '" + name + "'");
        }
        return f;
    }

    S operator()(const S& t) const {
        switch (kind_) {
            case Kind::monomial:
                return pow_int(t, order_);
            case Kind::polynomial: {
                // Horner, exact in rational mode.
                S acc(0);
                for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
                    acc = acc * t + *it;
                return acc;
            }
            case Kind::builtin:
                if constexpr (is_exact_scalar_v<S>)
                    throw exact_mode_unsupported_error(
                        "builtin functions are float-only");
                else
                    return builtin_(t);
        }
        throw invalid_domain_error("unreachable function kind");
    }

    Kind kind() const { return kind_; }
    bool exact_evaluable() const { return kind_ != Kind::builtin; }
    const std::string& label() const { return label_; }

    /// Upper bound on sup_{[0,1]} |phi| used by the series truncation rule.
    /// Monomials and polynomials get cheap rigorous bounds; builtins carry
    /// the exact sup where known, otherwise a 1025-point sample inflated 2x.
    double sup_norm_bound() const {
        switch (kind_) {
            case Kind::monomial:
                return 1.0;
            case Kind::polynomial: {
                double b = 0.0;
                for (const auto& c : coeffs_) b += std::fabs(scalar_traits<S>::to_double(c));
                return b > 0.0 ? b : 1.0;
            }
            case Kind::builtin: {
                if (sup_norm_ > 0.0) return sup_norm_;
                if constexpr (!is_exact_scalar_v<S>) {
                    double m = 0.0;
                    for (int i = 0; i <= 1024; ++i)
                        m = std::max(m, std::fabs(builtin_(i / 1024.0)));
                    return 2.0 * m;
                }
                return 1.0;
            }
        }
        return 1.0;
    }

private:
    SampledFunction() = default;

    Kind kind_ = Kind::monomial;
    int order_ = 0;
    std::vector<S> coeffs_;
    std::function<double(double)> builtin_;
    double sup_norm_ = 0.0;
    std::string label_ = "e0";
};

} // namespace qstancu
