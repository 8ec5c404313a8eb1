#include "qstancu/qcore.hpp"

#include <cmath>
#include <limits>

namespace qstancu {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_float_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw invalid_q_error{};
}

// Smallest N with q^N/(1-q) <= tail_tol; the x-independent tail estimate
// sum_{i>=N} q^i = q^N/(1-q).
int truncation_index(double q, double tail_tol) {
    if (!(tail_tol > 0.0)) throw invalid_domain_error("tail_tol must be > 0");
    int n = 0;
    double qpow = 1.0;
    const double limit = tail_tol * (1.0 - q);
    while (qpow > limit) {
        qpow *= q;
        ++n;
        if (n > 1000000)
            throw invalid_domain_error("truncation index exceeds 1e6; tail_tol too small for this q");
    }
    return n;
}

} // namespace

std::pair<double, TruncationCertificate>
q_pochhammer_infinite(double a, double q, double tail_tol) {
    check_float_q(q);
    if (!(a >= 0.0 && a <= 1.0))
        throw invalid_domain_error("q_pochhammer_infinite needs a in [0,1]");
    const int n = truncation_index(q, tail_tol);
    double prod = 1.0;
    double qpow = 1.0;
    int rounded_factors = 0;  // factors that actually moved the product
    int used = 0;
    for (int j = 0; j < n; ++j) {
        const double factor = 1.0 - a * qpow;
        if (factor != 1.0) ++rounded_factors;
        prod *= factor;
        qpow *= q;
        ++used;
        if (prod == 0.0) break;  // an annihilating factor; the infinite product is 0 too
    }
    TruncationCertificate cert;
    cert.n_terms = used;
    // Truncation gap <= prod * a * q^N/(1-q) by the Bernoulli inequality,
    // plus a provision for the rounding of the partial product itself.
    cert.tail_bound = prod * a * qpow / (1.0 - q) + rounded_factors * kEps * prod;
    return {prod, cert};
}

std::pair<Rational, TruncationCertificate>
q_pochhammer_infinite(const Rational&, const Rational&, double) {
    throw exact_mode_unsupported_error(
        "infinite q-Pochhammer products are not available on the exact-rational backend");
}

double q_q_infinite_lower_bound(double q) {
    check_float_q(q);
    const int n = truncation_index(q, 0.25 * (1.0 - q));
    double prod = 1.0;
    double qpow = q;
    for (int j = 0; j < n; ++j) {
        prod *= 1.0 - qpow;
        qpow *= q;
    }
    const double rest = 1.0 - qpow / (1.0 - q);  // (q^{N+1};q)_inf >= this
    double bound = prod * rest;
    bound -= (n + 2) * kEps * prod;  // rounding provision keeps it a lower bound
    return bound > 0.0 ? bound : std::numeric_limits<double>::min();
}

std::pair<double, TruncationCertificate>
q_binomial_theorem_series(double a, double x, double q, double tail_tol) {
    check_float_q(q);
    if (!(a >= 0.0 && a <= 1.0))
        throw invalid_domain_error("q_binomial_theorem_series needs a in [0,1]");
    if (!(std::fabs(x) < 1.0))
        throw invalid_domain_error("q_binomial_theorem_series needs |x| < 1");
    if (!(tail_tol > 0.0)) throw invalid_domain_error("tail_tol must be > 0");
    if (x == 0.0) return {1.0, TruncationCertificate{1, 0.0}};  // only the k=0 term

    const double ax = std::fabs(x);
    const double qq_inf = q_q_infinite_lower_bound(q);

    // term_k = (a;q)_k/(q;q)_k x^k; |term_k| <= |x|^k/(q;q)_inf since
    // (a;q)_k in [0,1] and (q;q)_k >= (q;q)_inf. Geometric tail.
    double sum = 0.0, comp = 0.0;   // Neumaier compensated sum
    double sum_abs = 0.0;
    double term = 1.0;              // k = 0
    double apoch = 1.0, qpoch = 1.0, qpow_a = 1.0, qpow_q = q, xpow = 1.0;
    int k = 0;
    double tail = 1.0 / ((1.0 - ax) * qq_inf);
    for (;;) {
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        sum_abs += std::fabs(term);

        tail *= ax;                 // = |x|^{k+1}/((1-|x|)(q;q)_inf lower bound)
        if (tail <= tail_tol) break;
        if (k > 2000000)
            throw invalid_domain_error("series truncation exceeds 2e6 terms");

        // advance to k+1
        apoch *= 1.0 - a * qpow_a;
        qpoch *= 1.0 - qpow_q;
        qpow_a *= q;
        qpow_q *= q;
        xpow *= x;
        term = apoch / qpoch * xpow;
        ++k;
    }
    const double value = sum + comp;
    TruncationCertificate cert;
    cert.n_terms = k + 1;
    cert.tail_bound = tail + (cert.n_terms + 4) * kEps * (sum_abs + std::fabs(value));
    return {value, cert};
}

std::pair<Rational, TruncationCertificate>
q_binomial_theorem_series(const Rational&, const Rational&, const Rational&, double) {
    throw exact_mode_unsupported_error(
        "the q-binomial theorem series is not available on the exact-rational backend");
}

std::pair<double, double>
q_pochhammer_infinite_ratio(double u, double v, double q, double tail_tol) {
    check_float_q(q);
    if (!(u >= -1.0 && u <= 1.0 && v >= -1.0 && v < 1.0))
        throw invalid_domain_error(
            "q_pochhammer_infinite_ratio needs u in [-1,1], v in [-1,1)");
    if (!(tail_tol > 0.0)) throw invalid_domain_error("tail_tol must be > 0");

    // Single combined product prod_{j<N} (1-u q^j)/(1-v q^j); negative
    // arguments are fine here since no factor can vanish on the denominator
    // side (|v| < 1). The remaining factor lies in [exp(-s), exp(s)] with
    // s = (|u|+|v|) q^N / ((1-q)(1-max(|u|,|v|) q^N)), so the truncation gap
    // is <= |ratio| * s * (1+s) for s <= 1.
    const int n = truncation_index(q, tail_tol);
    double ratio = 1.0;
    double qpow = 1.0;
    for (int j = 0; j < n; ++j) {
        ratio *= (1.0 - u * qpow) / (1.0 - v * qpow);
        qpow *= q;
        if (ratio == 0.0) break;
    }
    const double cmax = std::max(std::fabs(u), std::fabs(v));
    const double s =
        (std::fabs(u) + std::fabs(v)) * qpow / ((1.0 - q) * (1.0 - cmax * qpow));
    const double gap = std::fabs(ratio) * s * (1.0 + s);
    const double rounding = (2.0 * n + 2.0) * kEps * (std::fabs(ratio) + 1.0);
    return {ratio, gap + rounding};
}

} // namespace qstancu
