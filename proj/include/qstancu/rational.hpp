#pragma once

#include <gmpxx.h>

#include <atomic>
#include <compare>
#include <iosfwd>
#include <string>

#include "qstancu/errors.hpp"

namespace qstancu {

/// Arbitrary-precision rational in canonical form: denominator > 0 and
/// gcd(|numerator|, denominator) = 1 after every operation. Arithmetic is
/// exact, so (a + b) - b == a holds identically. Backed by GMP's mpq_class;
/// every constructor canonicalizes, so values are canonical by construction.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(int n) : value_(n) {}         // NOLINT(google-explicit-constructor)
    Rational(long n) : value_(static_cast<signed long>(n)) {}  // NOLINT
    Rational(long num, long den) {
        if (den == 0) throw zero_denominator_error{};
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

    /// Parses "p/q" or a plain integer string. Throws parse_error on malformed
    /// input and zero_denominator_error on "p/0".
    static Rational from_string(const std::string& s);

    /// Exact value of a decimal string such as "0.125" or "-3.5e-2",
    /// i.e. the rational p/10^k the string denotes.
    static Rational from_decimal_string(const std::string& s);

    const mpz_class& numerator() const { return value_.get_num(); }
    const mpz_class& denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }

    double to_double() const { return value_.get_d(); }
    std::string to_string() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw zero_denominator_error{};
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    friend Rational abs(const Rational& a) { return Rational(mpq_class(::abs(a.value_))); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class value_;
};

/// Canonical-form rational equal to num/den. Throws zero_denominator_error
/// when den == 0.
inline Rational rational_of(long num, long den) { return Rational(num, den); }

/// Degree cap for exact-mode basis and operator evaluation; above it the
/// big-integer coordinates grow quickly, so exact mode refuses the request
/// instead of degrading silently. Closed-form moment formulas are O(1) and
/// are not capped.
int exact_degree_cap();
void set_exact_degree_cap(int cap);

} // namespace qstancu
