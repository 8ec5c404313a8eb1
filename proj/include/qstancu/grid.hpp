#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qstancu/functions.hpp"
#include "qstancu/limitop.hpp"
#include "qstancu/qparams.hpp"
#include "qstancu/stancu.hpp"

namespace qstancu {

/// Thread cap read from QSTANCU_THREADS. 0 (also unset, empty, or
/// unparsable) means "let the runtime decide"; a positive value caps the
/// team size of every parallel kernel below.
int thread_cap_from_env();

/// S_n(f; x) for every x in xs. The parallel version distributes grid
/// points across an OpenMP team; each point runs the identical scalar code
/// path, so the output is bitwise equal to the serial reference.
std::vector<double> operator_grid(const QParams<double>& params, int n,
                                  const SampledFunction<double>& f,
                                  const std::vector<double>& xs,
                                  BasisForm form = BasisForm::automatic);
std::vector<double> operator_grid_ref(const QParams<double>& params, int n,
                                      const SampledFunction<double>& f,
                                      const std::vector<double>& xs,
                                      BasisForm form = BasisForm::automatic);

/// Truncated S_inf(f; x) for every x in xs.
std::vector<SeriesEvaluation> limit_grid(const QParams<double>& params,
                                         const SampledFunction<double>& f,
                                         const std::vector<double>& xs,
                                         double tail_tol);
std::vector<SeriesEvaluation> limit_grid_ref(const QParams<double>& params,
                                             const SampledFunction<double>& f,
                                             const std::vector<double>& xs,
                                             double tail_tol);

/// Number of indices i in [0, count) where check(i) returns false; check
/// must be safe to call concurrently. Backbone of the sweep-style property
/// checks.
std::size_t parallel_count_failures(std::size_t count,
                                    const std::function<bool(std::size_t)>& check);
std::size_t parallel_count_failures_ref(std::size_t count,
                                        const std::function<bool(std::size_t)>& check);

/// max_i |a[i] - b[i]|; sizes must agree.
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

} // namespace qstancu
