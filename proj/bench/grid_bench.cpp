// Times the OpenMP grid kernels against their serial references on a dense
// evaluation grid and reports throughput plus the worst elementwise gap
// (expected: exactly 0, the kernels share the scalar code path).

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qstancu/grid.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_best_of(int repeats, F&& body) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        body();
        const std::chrono::duration<double> elapsed = Clock::now() - start;
        if (elapsed.count() < best) best = elapsed.count();
    }
    return best;
}

std::vector<double> dense_grid(int count) {
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (count - 1);
    return xs;
}

} // namespace

int main() {
    using namespace qstancu;

    const QParams<double> params(0.5, 0.25);
    const auto f = SampledFunction<double>::builtin("exp");
    const std::vector<double> xs = dense_grid(20001);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d (QSTANCU_THREADS cap %d)\n",
                omp_get_max_threads(), thread_cap_from_env());
#else
    std::printf("OpenMP disabled; both columns run serial code\n");
#endif
    std::printf("%-22s %12s %12s %9s %12s\n", "kernel", "serial [s]", "parallel [s]",
                "speedup", "max |diff|");

    {
        constexpr int n = 64;
        std::vector<double> serial, parallel;
        const double ts = time_best_of(3, [&] {
            serial = operator_grid_ref(params, n, f, xs);
        });
        const double tp = time_best_of(3, [&] {
            parallel = operator_grid(params, n, f, xs);
        });
        std::printf("%-22s %12.4f %12.4f %8.2fx %12.3e\n", "operator_grid n=64", ts, tp,
                    ts / tp, max_abs_diff(serial, parallel));
    }

    {
        const double tail_tol = 1e-10;
        std::vector<SeriesEvaluation> serial, parallel;
        const double ts = time_best_of(3, [&] {
            serial = limit_grid_ref(params, f, xs, tail_tol);
        });
        const double tp = time_best_of(3, [&] {
            parallel = limit_grid(params, f, xs, tail_tol);
        });
        std::vector<double> sv, pv;
        sv.reserve(serial.size());
        pv.reserve(parallel.size());
        for (const auto& e : serial) sv.push_back(e.value);
        for (const auto& e : parallel) pv.push_back(e.value);
        std::printf("%-22s %12.4f %12.4f %8.2fx %12.3e\n", "limit_grid", ts, tp, ts / tp,
                    max_abs_diff(sv, pv));
    }

    {
        const auto check = [&](std::size_t i) {
            const double x = xs[i];
            const double m2 = apply(params, 16, SampledFunction<double>::monomial(2), x);
            return m2 >= -1e-15 && m2 <= 1.0 + 1e-15;
        };
        std::size_t fs = 0, fp = 0;
        const double ts = time_best_of(3, [&] {
            fs = parallel_count_failures_ref(xs.size(), check);
        });
        const double tp = time_best_of(3, [&] {
            fp = parallel_count_failures(xs.size(), check);
        });
        std::printf("%-22s %12.4f %12.4f %8.2fx %12.3e\n", "count_failures", ts, tp,
                    ts / tp, static_cast<double>(fs > fp ? fs - fp : fp - fs));
    }
    return 0;
}
