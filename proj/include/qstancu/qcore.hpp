#pragma once

#include <utility>
#include <vector>

#include "qstancu/errors.hpp"
#include "qstancu/scalar.hpp"
#include "qstancu/tolerance.hpp"

namespace qstancu {

namespace detail {
template <ScalarType S>
void check_q(const S& q) {
    if (!(q > S(0) && q < S(1))) throw invalid_q_error{};
}
} // namespace detail

/// [n]_q = 1 + q + ... + q^{n-1}, with [0]_q = 0. Exact mode sums the
/// geometric terms directly; float mode uses (1 - q^n)/(1 - q).
template <ScalarType S>
S q_integer(int n, const S& q) {
    detail::check_q(q);
    if (n < 0) throw invalid_domain_error("q_integer needs n >= 0");
    if constexpr (is_exact_scalar_v<S>) {
        S sum(0), term(1);
        for (int i = 0; i < n; ++i) {
            sum += term;
            term *= q;
        }
        return sum;
    } else {
        return (1.0 - pow_int(q, n)) / (1.0 - q);
    }
}

/// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.
template <ScalarType S>
S q_factorial(int n, const S& q) {
    detail::check_q(q);
    if (n < 0) throw invalid_domain_error("q_factorial needs n >= 0");
    S prod(1);
    for (int i = 1; i <= n; ++i) prod = prod * q_integer(i, q);
    return prod;
}

/// (a;q)_m = prod_{j=0}^{m-1} (1 - a q^j), with (a;q)_0 = 1.
template <ScalarType S>
S q_pochhammer(const S& a, const S& q, int m) {
    detail::check_q(q);
    if (m < 0) throw invalid_domain_error("q_pochhammer needs m >= 0");
    S prod(1), qpow(1);
    for (int j = 0; j < m; ++j) {
        prod = prod * (S(1) - a * qpow);
        qpow *= q;
    }
    return prod;
}

/// Gaussian binomial coefficient via the q-factorial route,
/// [n]_q! / ([k]_q! [n-k]_q!).
template <ScalarType S>
S q_binomial(int n, int k, const S& q) {
    detail::check_q(q);
    if (k < 0 || n < 0 || k > n)
        throw index_out_of_range_error("q_binomial needs 0 <= k <= n");
    return q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q));
}

/// Same coefficient via the (q;q) ratio route,
/// (q;q)_n / ((q;q)_k (q;q)_{n-k}); cross-checks q_binomial.
template <ScalarType S>
S q_binomial_via_pochhammer(int n, int k, const S& q) {
    detail::check_q(q);
    if (k < 0 || n < 0 || k > n)
        throw index_out_of_range_error("q_binomial needs 0 <= k <= n");
    return q_pochhammer(q, q, n) / (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k));
}

/// Row [n 0]_q .. [n n]_q built incrementally through the ratio
/// [n k+1] = [n k] * [n-k]/[k+1]; exact in rational mode.
template <ScalarType S>
std::vector<S> q_binomial_row(int n, const S& q) {
    detail::check_q(q);
    if (n < 0) throw invalid_domain_error("q_binomial_row needs n >= 0");
    std::vector<S> row;
    row.reserve(static_cast<std::size_t>(n) + 1);
    row.push_back(S(1));
    for (int k = 0; k < n; ++k)
        row.push_back(row.back() * q_integer(n - k, q) / q_integer(k + 1, q));
    return row;
}

/// Checks the finite product identity
///   (ab;q)_n = sum_{k=0}^n [n k]_q b^k (a;q)_k (b;q)_{n-k}
/// by evaluating both sides. Exact comparison in rational mode, tolerance
/// comparison in float mode.
template <ScalarType S>
bool verify_product_identity(const S& a, const S& b, const S& q, int n,
                             const Tolerance& tol = Tolerance{}) {
    detail::check_q(q);
    if (n < 0) throw invalid_domain_error("verify_product_identity needs n >= 0");
    const S lhs = q_pochhammer(a * b, q, n);
    S rhs(0);
    const std::vector<S> binom = q_binomial_row(n, q);
    S bpow(1);
    for (int k = 0; k <= n; ++k) {
        rhs += binom[static_cast<std::size_t>(k)] * bpow * q_pochhammer(a, q, k) *
               q_pochhammer(b, q, n - k);
        bpow *= b;
    }
    if constexpr (is_exact_scalar_v<S>) {
        (void)tol;
        return lhs == rhs;
    } else {
        return approx_equal(lhs, rhs, tol);
    }
}

/// Truncation index N together with a proven upper bound on the discarded
/// tail; the bound covers the truncation gap (via the Bernoulli inequality
/// 1 - prod(1 - a_i) <= sum a_i) plus a small provision for the floating
/// rounding accumulated while forming the value.
struct TruncationCertificate {
    int n_terms = 0;
    double tail_bound = 0.0;
};

/// Truncated infinite q-Pochhammer (a;q)_N for a in [0,1], q in (0,1).
/// N is the smallest index with q^N/(1-q) <= tail_tol; the certificate
/// reports the tightened bound (a;q)_N * a * q^N/(1-q), so
/// 0 <= (a;q)_N - (a;q)_inf <= tail_bound. Float mode only; negative a is
/// rejected (the operator theory only needs arguments in [0,1]).
std::pair<double, TruncationCertificate>
q_pochhammer_infinite(double a, double q, double tail_tol);

/// Exact mode cannot form infinite products; requesting one is an error
/// rather than a silent float coercion.
std::pair<Rational, TruncationCertificate>
q_pochhammer_infinite(const Rational& a, const Rational& q, double tail_tol);

/// Certified lower bound for (q;q)_inf, used in series tail estimates:
/// (q;q)_inf >= (q;q)_N * (1 - q^{N+1}/(1-q)).
double q_q_infinite_lower_bound(double q);

/// Truncated q-binomial series sum_{k>=0} (a;q)_k/(q;q)_k x^k for a in [0,1],
/// |x| < 1, with a geometric-tail certificate. Converges to
/// (ax;q)_inf/(x;q)_inf.
std::pair<double, TruncationCertificate>
q_binomial_theorem_series(double a, double x, double q, double tail_tol);

std::pair<Rational, TruncationCertificate>
q_binomial_theorem_series(const Rational& a, const Rational& x, const Rational& q,
                          double tail_tol);

/// (u;q)_inf / (v;q)_inf for u in [-1,1], v in [-1,1), evaluated as one
/// combined truncated product with a certified error bound. Signed
/// arguments are accepted here (unlike the unary infinite product) because
/// the series identity is exercised at negative x; the returned second
/// value bounds |ratio - true ratio|.
std::pair<double, double>
q_pochhammer_infinite_ratio(double u, double v, double q, double tail_tol);

} // namespace qstancu
