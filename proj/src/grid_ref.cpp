#include "qstancu/grid.hpp"

// Serial twins of the parallel kernels. They intentionally share the scalar
// code path with the OpenMP versions so the two can be compared bitwise.

namespace qstancu {

std::vector<double> operator_grid_ref(const QParams<double>& params, int n,
                                      const SampledFunction<double>& f,
                                      const std::vector<double>& xs,
                                      BasisForm form) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = apply(params, n, f, xs[i], form);
    return out;
}

std::vector<SeriesEvaluation> limit_grid_ref(const QParams<double>& params,
                                             const SampledFunction<double>& f,
                                             const std::vector<double>& xs,
                                             double tail_tol) {
    std::vector<SeriesEvaluation> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = limit_apply(params, f, xs[i], tail_tol);
    return out;
}

std::size_t parallel_count_failures_ref(std::size_t count,
                                        const std::function<bool(std::size_t)>& check) {
    std::size_t failures = 0;
    for (std::size_t i = 0; i < count; ++i)
        if (!check(i)) ++failures;
    return failures;
}

} // namespace qstancu
