#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qstancu/functions.hpp"
#include "qstancu/qcore.hpp"
#include "qstancu/qparams.hpp"

namespace qstancu {

/// Which representation of the basis polynomials to evaluate.
/// `automatic` routes through the Pochhammer form except at the degenerate
/// point x + gamma = 0, where only the product form is defined.
enum class BasisForm { automatic, product, pochhammer };

template <ScalarType S>
struct BasisVector {
    int n = 0;
    BasisForm representation = BasisForm::product;
    std::vector<S> values;  // p_{n,0}(x) .. p_{n,n}(x)
};

namespace detail {

template <ScalarType S>
void check_unit_interval(const S& x) {
    if (x < S(0) || x > S(1))
        throw invalid_domain_error("x must lie in [0,1]");
}

template <ScalarType S>
void check_degree(int n) {
    if (n < 1) throw invalid_domain_error("operator degree n must be >= 1");
    if constexpr (is_exact_scalar_v<S>) {
        if (n > exact_degree_cap())
            throw exact_cap_exceeded_error(
                "exact mode refuses n > " + std::to_string(exact_degree_cap()) +
                "; raise the cap with set_exact_degree_cap");
    }
}

} // namespace detail

/// prod_{i=0}^{k-1} (x + alpha [i]_q); equals (x+gamma)^k (gamma/(x+gamma);q)_k
/// whenever x + gamma > 0.
template <ScalarType S>
S rising_product(const QParams<S>& params, const S& x, int k) {
    if (k < 0) throw invalid_domain_error("rising_product needs k >= 0");
    S prod(1), qint(0), qpow(1);
    for (int i = 0; i < k; ++i) {
        prod = prod * (x + params.alpha() * qint);
        qint += qpow;
        qpow *= params.q();
    }
    return prod;
}

/// prod_{i=0}^{j-1} (1 - q^i x + alpha [i]_q); equals
/// (1+gamma)^j ((x+gamma)/(1+gamma);q)_j.
template <ScalarType S>
S falling_product(const QParams<S>& params, const S& x, int j) {
    if (j < 0) throw invalid_domain_error("falling_product needs j >= 0");
    S prod(1), qint(0), qpow(1);
    for (int i = 0; i < j; ++i) {
        prod = prod * (S(1) - qpow * x + params.alpha() * qint);
        qint += qpow;
        qpow *= params.q();
    }
    return prod;
}

/// Basis through the defining product representation,
///   p_{n,k}(x) = [n k]_q rising_k(x) falling_{n-k}(x) / prod_{i<n}(1 + alpha [i]_q).
/// Valid at every point of [0,1], including x in {0,1} and alpha = 0.
template <ScalarType S>
BasisVector<S> basis_product_form(const QParams<S>& params, int n, const S& x) {
    detail::check_degree<S>(n);
    detail::check_unit_interval(x);
    const auto un = static_cast<std::size_t>(n);

    std::vector<S> rising(un + 1), falling(un + 1);
    rising[0] = S(1);
    falling[0] = S(1);
    S qint(0), qpow(1), denom(1);
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        rising[ui + 1] = rising[ui] * (x + params.alpha() * qint);
        falling[ui + 1] = falling[ui] * (S(1) - qpow * x + params.alpha() * qint);
        denom = denom * (S(1) + params.alpha() * qint);
        qint += qpow;
        qpow *= params.q();
    }

    BasisVector<S> basis;
    basis.n = n;
    basis.representation = BasisForm::product;
    basis.values.resize(un + 1);
    const std::vector<S> binom = q_binomial_row(n, params.q());
    for (std::size_t k = 0; k <= un; ++k)
        basis.values[k] = binom[k] * rising[k] * falling[un - k] / denom;
    return basis;
}

/// Basis through the q-Pochhammer representation,
///   p_{n,k}(x) = [n k]_q b^k (gamma/(x+gamma);q)_k (b;q)_{n-k} / (g;q)_n
/// with b = (x+gamma)/(1+gamma), g = gamma/(1+gamma). Requires x + gamma > 0;
/// at the degenerate point alpha = 0, x = 0 use the product form.
template <ScalarType S>
BasisVector<S> basis_pochhammer_form(const QParams<S>& params, int n, const S& x) {
    detail::check_degree<S>(n);
    detail::check_unit_interval(x);
    const S gamma = params.gamma();
    if (!(x + gamma > S(0)))
        throw degenerate_point_error(
            "the Pochhammer-form basis is undefined at x + gamma = 0");

    const auto un = static_cast<std::size_t>(n);
    const S ratio_node = gamma / (x + gamma);       // argument of the k-indexed factor
    const S b = (x + gamma) / (S(1) + gamma);
    const S g = gamma / (S(1) + gamma);

    std::vector<S> poch_node(un + 1), poch_b(un + 1), bpow(un + 1);
    poch_node[0] = S(1);
    poch_b[0] = S(1);
    bpow[0] = S(1);
    S qpow(1);
    for (std::size_t i = 0; i < un; ++i) {
        poch_node[i + 1] = poch_node[i] * (S(1) - ratio_node * qpow);
        poch_b[i + 1] = poch_b[i] * (S(1) - b * qpow);
        bpow[i + 1] = bpow[i] * b;
        qpow *= params.q();
    }
    const S denom = q_pochhammer(g, params.q(), n);

    BasisVector<S> basis;
    basis.n = n;
    basis.representation = BasisForm::pochhammer;
    basis.values.resize(un + 1);
    const std::vector<S> binom = q_binomial_row(n, params.q());
    for (std::size_t k = 0; k <= un; ++k)
        basis.values[k] = binom[k] * bpow[k] * poch_node[k] * poch_b[un - k] / denom;
    return basis;
}

template <ScalarType S>
BasisVector<S> basis(const QParams<S>& params, int n, const S& x,
                     BasisForm form = BasisForm::automatic) {
    switch (form) {
        case BasisForm::product:
            return basis_product_form(params, n, x);
        case BasisForm::pochhammer:
            return basis_pochhammer_form(params, n, x);
        case BasisForm::automatic:
            if (x + params.gamma() > S(0)) return basis_pochhammer_form(params, n, x);
            return basis_product_form(params, n, x);
    }
    throw invalid_domain_error("unreachable basis form");
}

/// S_n(f; x) = sum_{k=0}^n f([k]_q/[n]_q) p_{n,k}(x).
template <ScalarType S>
S apply(const QParams<S>& params, int n, const SampledFunction<S>& f, const S& x,
        BasisForm form = BasisForm::automatic) {
    const BasisVector<S> b = basis(params, n, x, form);
    const S denom_node = q_integer(n, params.q());
    S sum(0), qint(0), qpow(1);
    for (int k = 0; k <= n; ++k) {
        sum += f(qint / denom_node) * b.values[static_cast<std::size_t>(k)];
        qint += qpow;
        qpow *= params.q();
    }
    return sum;
}

/// Closed-form moments: 1, x, and
/// (1/(1+alpha)) { x(x+alpha) + x(1-x)/[n]_q } for m = 0, 1, 2.
template <ScalarType S>
S moment_closed_form(const QParams<S>& params, int n, int m, const S& x) {
    if (n < 1) throw invalid_domain_error("operator degree n must be >= 1");
    switch (m) {
        case 0:
            return S(1);
        case 1:
            return x;
        case 2:
            return (x * (x + params.alpha()) +
                    x * (S(1) - x) / q_integer(n, params.q())) /
                   (S(1) + params.alpha());
        default:
            throw unsupported_order_error(
                "no closed form for m > 2; use a moment recurrence");
    }
}

namespace detail {

// Shared by both recurrences: the parameter pair at recursion level n is
// fixed by the descent depth, so (n, order) keys a per-call memo table.
template <ScalarType S>
struct MomentMemo {
    std::map<std::pair<int, int>, S> values;
};

template <ScalarType S>
S moment_direct(const QParams<S>& params, int n, int m, const S& x) {
    return apply(params, n, SampledFunction<S>::monomial(m), x);
}

template <ScalarType S>
S moment_rec_binomial_impl(const QParams<S>& params, int n, int order, const S& x,
                           MomentMemo<S>& memo) {
    if (order == 0) return S(1);
    if (n == 1) return moment_direct(params, n, order, x);
    if (auto it = memo.values.find({n, order}); it != memo.values.end())
        return it->second;

    const int m = order - 1;
    const QParams<S> down = params.descend();
    const S xdown = shift_node_binomial(params, x);
    const S qn1 = q_integer(n - 1, params.q());

    S sum(0), qpow(1), qn1pow(1);
    long long binom = 1;
    for (int s = 0; s <= m; ++s) {
        sum += S(static_cast<long>(binom)) * qpow * qn1pow *
               moment_rec_binomial_impl(down, n - 1, s, xdown, memo);
        binom = binom * (m - s) / (s + 1);
        qpow *= params.q();
        qn1pow *= qn1;
    }
    S result = x * sum / pow_int(q_integer(n, params.q()), m);
    memo.values.emplace(std::make_pair(n, order), result);
    return result;
}

template <ScalarType S>
S moment_rec_videnskii_impl(const QParams<S>& params, int n, int order, const S& x,
                            MomentMemo<S>& memo) {
    if (order == 0) return S(1);
    if (n == 1) return moment_direct(params, n, order, x);
    if (auto it = memo.values.find({n, order}); it != memo.values.end())
        return it->second;

    const int m = order - 1;
    const QParams<S> down = params.descend();
    const S xdown = shift_node_onestep(params, x);
    const S ratio = q_integer(n - 1, params.q()) / q_integer(n, params.q());
    S result = moment_rec_videnskii_impl(params, n, m, x, memo) -
               (S(1) - x) * pow_int(ratio, m) *
                   moment_rec_videnskii_impl(down, n - 1, m, xdown, memo);
    memo.values.emplace(std::make_pair(n, order), result);
    return result;
}

} // namespace detail

/// S_n(e_{m+1}; x) through the binomial-sum recurrence
///   S_n(e_{m+1};x) = (x/[n]_q^m) sum_s C(m,s) q^s [n-1]_q^s
///                    S_{n-1}^{q, q a/(1+a)}(e_s; (x+a)/(1+a)),
/// descending to the n = 1 base handled by direct summation.
template <ScalarType S>
S moment_recurrence_binomial(const QParams<S>& params, int n, int m, const S& x) {
    detail::check_unit_interval(x);
    if (n < 1) throw invalid_domain_error("operator degree n must be >= 1");
    if (m < 0) throw invalid_domain_error("moment order m must be >= 0");
    detail::MomentMemo<S> memo;
    return detail::moment_rec_binomial_impl(params, n, m + 1, x, memo);
}

/// S_n(e_{m+1}; x) through the one-step recurrence
///   S_n(e_{m+1};x) = S_n(e_m;x) - (1-x)([n-1]_q/[n]_q)^m
///                    S_{n-1}^{q, q a/(1+a)}(e_m; q x/(1+a)).
template <ScalarType S>
S moment_recurrence_videnskii(const QParams<S>& params, int n, int m, const S& x) {
    detail::check_unit_interval(x);
    if (n < 1) throw invalid_domain_error("operator degree n must be >= 1");
    if (m < 0) throw invalid_domain_error("moment order m must be >= 0");
    detail::MomentMemo<S> memo;
    return detail::moment_rec_videnskii_impl(params, n, m + 1, x, memo);
}

/// Verifies the basis identity
///   ([k]_q/[n]_q) p_{n,k}(x) = p_{n,k}(x) - (1-x) p_{n-1,k}^{q, q a/(1+a)}(q x/(1+a))
/// for 0 <= k <= n, with the convention p_{n-1,n} := 0 at k = n and the
/// degree-0 basis {1} when n = 1. Exact comparison in rational mode.
template <ScalarType S>
bool basis_recurrence_check(const QParams<S>& params, int n, int k, const S& x,
                            const Tolerance& tol = Tolerance{}) {
    detail::check_unit_interval(x);
    if (n < 1) throw invalid_domain_error("operator degree n must be >= 1");
    if (k < 0 || k > n) throw index_out_of_range_error("basis_recurrence_check needs 0 <= k <= n");

    const BasisVector<S> p_n = basis_product_form(params, n, x);
    const S p_nk = p_n.values[static_cast<std::size_t>(k)];
    const S lhs = q_integer(k, params.q()) / q_integer(n, params.q()) * p_nk;

    S second(0);
    if (k <= n - 1) {
        const QParams<S> down = params.descend();
        const S xdown = shift_node_onestep(params, x);
        if (n - 1 >= 1) {
            const BasisVector<S> p_n1 = basis_product_form(down, n - 1, xdown);
            second = p_n1.values[static_cast<std::size_t>(k)];
        } else {
            second = S(1);  // degree-0 basis is the constant 1
        }
    }
    const S rhs = p_nk - (S(1) - x) * second;

    if constexpr (is_exact_scalar_v<S>) {
        (void)tol;
        return lhs == rhs;
    } else {
        return approx_equal(lhs, rhs, tol);
    }
}

} // namespace qstancu
