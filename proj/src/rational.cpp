#include "qstancu/rational.hpp"

#include <atomic>
#include <cctype>
#include <ostream>

namespace qstancu {

namespace {

std::atomic<int> g_exact_degree_cap{32};

bool is_integer_string(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// Base must be pinned to 10: GMP's default base 0 would read a leading zero
// as octal. GMP also rejects a leading '+'.
mpz_class to_mpz(const std::string& s) {
    return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

} // namespace

int exact_degree_cap() { return g_exact_degree_cap.load(); }
void set_exact_degree_cap(int cap) { g_exact_degree_cap.store(cap); }

Rational Rational::from_string(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_string(s)) throw parse_error("not an integer or p/q rational: '" + s + "'");
        return Rational(mpq_class(to_mpz(s)));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!is_integer_string(num) || !is_integer_string(den))
        throw parse_error("malformed rational: '" + s + "'");
    mpz_class d = to_mpz(den);
    if (d == 0) throw zero_denominator_error{};
    mpq_class v(to_mpz(num), d);
    return Rational(v);
}

Rational Rational::from_decimal_string(const std::string& s) {
    // Accepts [sign] digits [. digits] [e|E [sign] digits]; the value is the
    // exact rational mantissa * 10^exponent.
    std::string t = s;
    long exp10 = 0;
    const auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        const std::string es = t.substr(epos + 1);
        if (!is_integer_string(es)) throw parse_error("malformed exponent in '" + s + "'");
        exp10 = std::stol(es);
        t = t.substr(0, epos);
    }
    const auto dot = t.find('.');
    if (dot != std::string::npos) {
        const std::string frac = t.substr(dot + 1);
        exp10 -= static_cast<long>(frac.size());
        t = t.substr(0, dot) + frac;
    }
    if (!is_integer_string(t)) throw parse_error("malformed decimal: '" + s + "'");
    mpq_class v{to_mpz(t)};
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0)
        v /= pow10;
    else
        v *= pow10;
    return Rational(v);
}

std::string Rational::to_string() const {
    if (denominator() == 1) return numerator().get_str();
    return numerator().get_str() + "/" + denominator().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

} // namespace qstancu
