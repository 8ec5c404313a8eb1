#pragma once

#include "qstancu/errors.hpp"
#include "qstancu/scalar.hpp"

namespace qstancu {

/// Validated parameter bundle (q, alpha) with the derived
/// gamma = alpha / (1 - q). Every operator evaluation runs against one of
/// these; q must lie strictly in (0,1) and alpha must be >= 0. gamma is
/// recomputed on demand so it can never go stale.
template <ScalarType S>
class QParams {
public:
    QParams(S q, S alpha) : q_(std::move(q)), alpha_(std::move(alpha)) {
        if (!(q_ > S(0) && q_ < S(1))) throw invalid_q_error{};
        if (alpha_ < S(0)) throw invalid_domain_error("alpha must be >= 0");
    }

    const S& q() const { return q_; }
    const S& alpha() const { return alpha_; }
    S gamma() const { return alpha_ / (S(1) - q_); }

    /// One level of the recurrence parameter transform: alpha -> q*alpha/(1+alpha),
    /// q unchanged. Both moment recurrences and both limit recurrences descend
    /// through this map.
    QParams descend() const { return QParams(q_, q_ * alpha_ / (S(1) + alpha_)); }

private:
    S q_;
    S alpha_;
};

/// Node transform paired with descend() in the binomial-sum recurrence:
/// x -> (x + alpha)/(1 + alpha).
template <ScalarType S>
S shift_node_binomial(const QParams<S>& params, const S& x) {
    return (x + params.alpha()) / (S(1) + params.alpha());
}

/// Node transform paired with descend() in the one-step recurrence:
/// x -> q*x/(1 + alpha).
template <ScalarType S>
S shift_node_onestep(const QParams<S>& params, const S& x) {
    return params.q() * x / (S(1) + params.alpha());
}

} // namespace qstancu
