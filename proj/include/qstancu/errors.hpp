#pragma once

#include <stdexcept>
#include <string>

namespace qstancu {

// Base class for all errors raised by the library.
class qstancu_error : public std::runtime_error {
public:
    explicit qstancu_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Rational construction with a zero denominator.
class zero_denominator_error : public qstancu_error {
public:
    zero_denominator_error() : qstancu_error("rational denominator must be nonzero") {}
};

// q outside the open interval (0,1).
class invalid_q_error : public qstancu_error {
public:
    explicit invalid_q_error(const std::string& msg = "q must lie strictly in (0,1)")
        : qstancu_error(msg) {}
};

// Argument outside the supported domain (e.g. negative alpha, |x| >= 1,
// Pochhammer argument outside [0,1]).
class invalid_domain_error : public qstancu_error {
public:
    explicit invalid_domain_error(const std::string& msg) : qstancu_error(msg) {}
};

// Basis/operator index out of range (e.g. k > n in a q-binomial).
class index_out_of_range_error : public qstancu_error {
public:
    explicit index_out_of_range_error(const std::string& msg) : qstancu_error(msg) {}
};

// An operation needing an infinite product or a transcendental function was
// requested on the exact-rational backend.
class exact_mode_unsupported_error : public qstancu_error {
public:
    explicit exact_mode_unsupported_error(const std::string& msg)
        : qstancu_error(msg) {}
};

// Exact-mode degree above the configured cap.
class exact_cap_exceeded_error : public qstancu_error {
public:
    explicit exact_cap_exceeded_error(const std::string& msg) : qstancu_error(msg) {}
};

// Evaluation point where a representation is undefined (x + gamma = 0 in the
// Pochhammer form of the basis).
class degenerate_point_error : public qstancu_error {
public:
    explicit degenerate_point_error(const std::string& msg) : qstancu_error(msg) {}
};

// Moment order without a closed form (m > 2); the recurrences cover it.
class unsupported_order_error : public qstancu_error {
public:
    explicit unsupported_order_error(const std::string& msg) : qstancu_error(msg) {}
};

// Malformed CLI input (scalar strings, function specs, ranges).
class parse_error : public qstancu_error {
public:
    explicit parse_error(const std::string& msg) : qstancu_error(msg) {}
};

// A request that contradicts the selected scalar mode, e.g. a transcendental
// function or a limit-series command in exact mode.
class mode_mismatch_error : public qstancu_error {
public:
    explicit mode_mismatch_error(const std::string& msg) : qstancu_error(msg) {}
};

} // namespace qstancu
