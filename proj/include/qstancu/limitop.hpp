#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qstancu/functions.hpp"
#include "qstancu/qcore.hpp"
#include "qstancu/qparams.hpp"

namespace qstancu {

/// One basis value p_{inf,k}(x) of the limit operator, with a certificate
/// covering the truncation of its two infinite Pochhammer factors.
struct LimitBasisValue {
    int k = 0;
    double value = 0.0;
    TruncationCertificate certificate;
};

/// Result of a truncated series evaluation. tail_bound is a rigorous bound
/// on |value - true sum| covering the discarded geometric tail, the
/// prefactor truncation, and accumulated float rounding. endpoint_clause is
/// set when x fell inside the switchover band near 1 and the value was taken
/// from the endpoint branch instead of the series; the bound then does not
/// cover the |f near 1 - f(1)| gap, only continuity guarantees smallness.
struct SeriesEvaluation {
    double value = 0.0;
    int terms_used = 0;
    double tail_bound = 0.0;
    bool endpoint_clause = false;
};

/// Width of the switchover band at the right endpoint: for x > 1 - delta the
/// series common ratio (x+gamma)/(1+gamma) is so close to 1 that truncation
/// indices blow up, so evaluation falls back to the endpoint branch.
constexpr double limit_endpoint_delta() { return 0x1p-20; }

/// p_{inf,k}(x) = (g/(x+g);q)_k ((x+g)/(1+g);q)_inf ((x+g)/(1+g))^k
///               / [ (q;q)_k (g/(1+g);q)_inf ]   with g = gamma.
/// At x = 0 this collapses to the point mass delta_{k,0} (for every alpha,
/// including the 0/0 node ratio at alpha = 0); at x = 1 it is 0 for every k.
LimitBasisValue limit_basis(const QParams<double>& params, int k, double x,
                            double tail_tol);

/// Truncated S_inf(f; x) = sum_k f(1-q^k) p_{inf,k}(x) for x in [0,1); the
/// definition's second branch gives f(1) at x = 1. The tail budget is split
/// a quarter to each infinite Pochhammer factor and half to the series tail.
SeriesEvaluation limit_apply(const QParams<double>& params,
                             const SampledFunction<double>& f, double x,
                             double tail_tol);

/// Limit moments with closed forms: 1, x, x - qx(1-x)/(1+alpha).
template <ScalarType S>
S limit_moment_closed_form(const QParams<S>& params, int m, const S& x) {
    switch (m) {
        case 0:
            return S(1);
        case 1:
            return x;
        case 2:
            return x - params.q() * x * (S(1) - x) / (S(1) + params.alpha());
        default:
            throw unsupported_order_error(
                "no closed form for m > 2; use limit_moment_general");
    }
}

/// All limit moments as the finite alternating sum
///   S_inf(e_m; x) = sum_{s=0}^m C(m,s) (-1)^s (b;q)_s / (g;q)_s
/// with b = (x+gamma)/(1+gamma), g = gamma/(1+gamma). Finite Pochhammers
/// only, so this is exact in rational mode and serves as the reference the
/// series and recurrences are checked against.
template <ScalarType S>
S limit_moment_general(const QParams<S>& params, int m, const S& x) {
    if (m < 0) throw invalid_domain_error("moment order m must be >= 0");
    const S gamma = params.gamma();
    const S b = (x + gamma) / (S(1) + gamma);
    const S g = gamma / (S(1) + gamma);

    S sum(0), poch_b(1), poch_g(1), qpow(1), sign(1);
    long long binom = 1;
    for (int s = 0; s <= m; ++s) {
        // keep the ratio grouped: at b == g it must be exactly 1
        sum += S(static_cast<long>(binom)) * sign * (poch_b / poch_g);
        poch_b = poch_b * (S(1) - b * qpow);
        poch_g = poch_g * (S(1) - g * qpow);
        qpow *= params.q();
        sign = -sign;
        binom = binom * (m - s) / (s + 1);
    }
    return sum;
}

namespace detail {

// Both limit recurrences descend through the same alpha chain; only the node
// transform differs. The pair (descent depth, moment order) keys the memo.
template <ScalarType S, typename Shift>
class LimitChain {
public:
    LimitChain(const QParams<S>& params, const S& x, Shift shift)
        : shift_(shift) {
        params_.push_back(params);
        nodes_.push_back(x);
    }

    const QParams<S>& params(int depth) {
        extend(depth);
        return params_[static_cast<std::size_t>(depth)];
    }
    const S& node(int depth) {
        extend(depth);
        return nodes_[static_cast<std::size_t>(depth)];
    }

private:
    void extend(int depth) {
        while (static_cast<int>(params_.size()) <= depth) {
            const QParams<S>& p = params_.back();
            nodes_.push_back(shift_(p, nodes_.back()));
            params_.push_back(p.descend());
        }
    }

    std::vector<QParams<S>> params_;
    std::vector<S> nodes_;
    Shift shift_;
};

} // namespace detail

/// S_inf(e_{m+1}; x) through the one-step recurrence
///   S_inf(e_{m+1};x) = S_inf(e_m;x) - (1-x) S_inf^{q, qa/(1+a)}(e_m; qx/(1+a)),
/// recursing on the moment order down to the e_0 base.
template <ScalarType S>
S limit_recurrence(const QParams<S>& params, int m, const S& x) {
    if (m < 0) throw invalid_domain_error("moment order m must be >= 0");
    detail::LimitChain<S, S (*)(const QParams<S>&, const S&)> chain(
        params, x, &shift_node_onestep<S>);
    std::map<std::pair<int, int>, S> memo;
    auto rec = [&](auto&& self, int depth, int order) -> S {
        if (order == 0) return S(1);
        if (auto it = memo.find({depth, order}); it != memo.end())
            return it->second;
        const S xd = chain.node(depth);
        S result = self(self, depth, order - 1) -
                   (S(1) - xd) * self(self, depth + 1, order - 1);
        memo.emplace(std::make_pair(depth, order), result);
        return result;
    };
    return rec(rec, 0, m + 1);
}

/// S_inf(e_{m+1}; x) through the binomial-sum recurrence
///   S_inf(e_{m+1};x) = x sum_s C(m,s) q^s (1-q)^{m-s}
///                      S_inf^{q, qa/(1+a)}(e_s; (x+a)/(1+a)).
template <ScalarType S>
S limit_recurrence_binomial(const QParams<S>& params, int m, const S& x) {
    if (m < 0) throw invalid_domain_error("moment order m must be >= 0");
    detail::LimitChain<S, S (*)(const QParams<S>&, const S&)> chain(
        params, x, &shift_node_binomial<S>);
    std::map<std::pair<int, int>, S> memo;
    auto rec = [&](auto&& self, int depth, int order) -> S {
        if (order == 0) return S(1);
        if (auto it = memo.find({depth, order}); it != memo.end())
            return it->second;
        const int mm = order - 1;
        const S q = chain.params(depth).q();
        S sum(0), qpow(1), onemq(pow_int(S(1) - q, mm));
        long long binom = 1;
        const S ratio_bump = (S(1) - q);
        for (int s = 0; s <= mm; ++s) {
            sum += S(static_cast<long>(binom)) * qpow * onemq *
                   self(self, depth + 1, s);
            binom = binom * (mm - s) / (s + 1);
            qpow *= q;
            if (s < mm) onemq = onemq / ratio_bump;
        }
        S result = chain.node(depth) * sum;
        memo.emplace(std::make_pair(depth, order), result);
        return result;
    };
    return rec(rec, 0, m + 1);
}

/// One row of the convergence table: the finite-degree operator's worst
/// deviation from the limit operator over the evaluation grid.
struct ConvergenceRow {
    int n = 0;
    double sup_error = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    double max_limit_tail_bound = 0.0;  // worst certificate among grid points
    bool endpoint_clause_used = false;
};

/// For each n <= n_max, max over the grid of |S_n(f;x) - S_inf(f;x)| with
/// the limit side evaluated once per grid point to tail_tol.
ConvergenceResult convergence_experiment(const QParams<double>& params,
                                         const SampledFunction<double>& f,
                                         int n_max,
                                         const std::vector<double>& grid,
                                         double tail_tol);

} // namespace qstancu
