#include "qstancu/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qstancu {

int thread_cap_from_env() {
    const char* raw = std::getenv("QSTANCU_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    try {
        std::size_t pos = 0;
        const int value = std::stoi(raw, &pos);
        if (pos != std::string(raw).size() || value < 0) return 0;
        return value;
    } catch (const std::exception&) {
        return 0;
    }
}

namespace {

int team_size() {
#ifdef _OPENMP
    const int cap = thread_cap_from_env();
    return cap > 0 ? cap : omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace

std::vector<double> operator_grid(const QParams<double>& params, int n,
                                  const SampledFunction<double>& f,
                                  const std::vector<double>& xs, BasisForm form) {
    std::vector<double> out(xs.size());
    const int nt = team_size();
    const auto count = static_cast<std::ptrdiff_t>(xs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        out[ui] = apply(params, n, f, xs[ui], form);
    }
    (void)nt;
    return out;
}

std::vector<SeriesEvaluation> limit_grid(const QParams<double>& params,
                                         const SampledFunction<double>& f,
                                         const std::vector<double>& xs,
                                         double tail_tol) {
    std::vector<SeriesEvaluation> out(xs.size());
    const int nt = team_size();
    const auto count = static_cast<std::ptrdiff_t>(xs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        out[ui] = limit_apply(params, f, xs[ui], tail_tol);
    }
    (void)nt;
    return out;
}

std::size_t parallel_count_failures(std::size_t count,
                                    const std::function<bool(std::size_t)>& check) {
    const auto limit = static_cast<std::ptrdiff_t>(count);
    const int nt = team_size();
    std::ptrdiff_t failures = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) reduction(+ : failures)
#endif
    for (std::ptrdiff_t i = 0; i < limit; ++i)
        if (!check(static_cast<std::size_t>(i))) ++failures;
    (void)nt;
    return static_cast<std::size_t>(failures);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("max_abs_diff needs equal-size vectors");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

} // namespace qstancu
