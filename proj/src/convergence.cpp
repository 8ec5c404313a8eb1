#include <cmath>

#include "qstancu/grid.hpp"
#include "qstancu/limitop.hpp"

namespace qstancu {

ConvergenceResult convergence_experiment(const QParams<double>& params,
                                         const SampledFunction<double>& f,
                                         int n_max,
                                         const std::vector<double>& grid,
                                         double tail_tol) {
    if (n_max < 1) throw invalid_domain_error("convergence_experiment needs n_max >= 1");
    if (grid.empty()) throw invalid_domain_error("convergence_experiment needs a nonempty grid");

    ConvergenceResult result;
    const std::vector<SeriesEvaluation> limit = limit_grid(params, f, grid, tail_tol);
    for (const SeriesEvaluation& e : limit) {
        result.max_limit_tail_bound = std::max(result.max_limit_tail_bound, e.tail_bound);
        result.endpoint_clause_used = result.endpoint_clause_used || e.endpoint_clause;
    }

    result.rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const std::vector<double> vals = operator_grid(params, n, f, grid);
        double sup = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            sup = std::max(sup, std::fabs(vals[i] - limit[i].value));
        result.rows.push_back(ConvergenceRow{n, sup});
    }
    return result;
}

} // namespace qstancu
