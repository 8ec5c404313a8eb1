#pragma once

#include <algorithm>
#include <cmath>

#include "qstancu/errors.hpp"

namespace qstancu {

/// Mixed absolute/relative comparison policy. At least one of the two bounds
/// must be strictly positive.
struct Tolerance {
    double absolute = 1e-12;
    double relative = 1e-12;

    Tolerance() = default;
    Tolerance(double abs_tol, double rel_tol) : absolute(abs_tol), relative(rel_tol) {
        if (absolute < 0 || relative < 0 || (absolute == 0 && relative == 0))
            throw invalid_domain_error("tolerance needs a strictly positive absolute or relative bound");
    }
};

/// true iff |x - y| <= tol.absolute + tol.relative * max(|x|, |y|).
inline bool approx_equal(double x, double y, const Tolerance& tol = Tolerance{}) {
    const double scale = std::max(std::fabs(x), std::fabs(y));
    return std::fabs(x - y) <= tol.absolute + tol.relative * scale;
}

} // namespace qstancu
