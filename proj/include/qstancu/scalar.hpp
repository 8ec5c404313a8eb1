#pragma once

#include <concepts>
#include <type_traits>

#include "qstancu/rational.hpp"

namespace qstancu {

/// Tags the two interchangeable arithmetic backends.
enum class ScalarKind { exact_rational, floating };

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr ScalarKind kind = ScalarKind::exact_rational;
    static Rational from_ratio(long num, long den) { return Rational(num, den); }
    static double to_double(const Rational& v) { return v.to_double(); }
};

template <>
struct scalar_traits<double> {
    static constexpr ScalarKind kind = ScalarKind::floating;
    static double from_ratio(long num, long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double to_double(double v) { return v; }
};

template <typename S>
concept ScalarType = std::same_as<S, Rational> || std::same_as<S, double>;

template <ScalarType S>
constexpr bool is_exact_scalar_v = scalar_traits<S>::kind == ScalarKind::exact_rational;

/// base^e for e >= 0 by repeated squaring; exact for Rational.
template <ScalarType S>
S pow_int(const S& base, int e) {
    S result(1);
    S b = base;
    for (; e > 0; e >>= 1) {
        if (e & 1) result = result * b;
        if (e > 1) b = b * b;
    }
    return result;
}

} // namespace qstancu
