#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "qstancu/grid.hpp"

using namespace qstancu;

namespace {

std::vector<double> dense_grid(int count) {
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) xs.push_back(i / (count - 1.0));
    return xs;
}

} // namespace

TEST_CASE("thread cap parsing") {
    unsetenv("QSTANCU_THREADS");
    CHECK(thread_cap_from_env() == 0);
    setenv("QSTANCU_THREADS", "", 1);
    CHECK(thread_cap_from_env() == 0);
    setenv("QSTANCU_THREADS", "0", 1);
    CHECK(thread_cap_from_env() == 0);
    setenv("QSTANCU_THREADS", "3", 1);
    CHECK(thread_cap_from_env() == 3);
    setenv("QSTANCU_THREADS", "abc", 1);
    CHECK(thread_cap_from_env() == 0);
    setenv("QSTANCU_THREADS", "2x", 1);
    CHECK(thread_cap_from_env() == 0);
    setenv("QSTANCU_THREADS", "-2", 1);
    CHECK(thread_cap_from_env() == 0);
    unsetenv("QSTANCU_THREADS");
}

TEST_CASE("operator_grid matches its serial reference bitwise") {
    const QParams<double> p(0.5, 0.25);
    const auto f = SampledFunction<double>::builtin("exp");
    const std::vector<double> xs = dense_grid(257);
    for (int n : {1, 7, 32}) {
        const std::vector<double> par = operator_grid(p, n, f, xs);
        const std::vector<double> ser = operator_grid_ref(p, n, f, xs);
        REQUIRE(par.size() == xs.size());
        CHECK(max_abs_diff(par, ser) == 0.0);
        CHECK(par.front() == f(0.0));
        CHECK(par.back() == f(1.0));
    }
}

TEST_CASE("limit_grid matches its serial reference bitwise") {
    const QParams<double> p(0.5, 0.25);
    const auto f = SampledFunction<double>::monomial(2);
    const std::vector<double> xs = dense_grid(129);
    const std::vector<SeriesEvaluation> par = limit_grid(p, f, xs, 1e-10);
    const std::vector<SeriesEvaluation> ser = limit_grid_ref(p, f, xs, 1e-10);
    REQUIRE(par.size() == xs.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].value == ser[i].value);
        CHECK(par[i].tail_bound == ser[i].tail_bound);
        CHECK(par[i].terms_used == ser[i].terms_used);
        CHECK(par[i].endpoint_clause == ser[i].endpoint_clause);
    }
    CHECK(par.back().value == f(1.0));  // x = 1 answers through the endpoint branch
    CHECK(par.back().tail_bound == 0.0);
}

TEST_CASE("parallel_count_failures") {
    auto even = [](std::size_t i) { return i % 2 == 0; };
    CHECK(parallel_count_failures(10, even) == 5);
    CHECK(parallel_count_failures_ref(10, even) == 5);
    CHECK(parallel_count_failures(0, even) == 0);
    auto all_good = [](std::size_t) { return true; };
    CHECK(parallel_count_failures(1000, all_good) == 0);
    auto all_bad = [](std::size_t) { return false; };
    CHECK(parallel_count_failures(1000, all_bad) == 1000);
}

TEST_CASE("kernels respect the thread cap") {
    setenv("QSTANCU_THREADS", "2", 1);
    const QParams<double> p(0.5, 0.25);
    const auto f = SampledFunction<double>::monomial(1);
    const std::vector<double> xs = dense_grid(64);
    CHECK(max_abs_diff(operator_grid(p, 8, f, xs), operator_grid_ref(p, 8, f, xs)) == 0.0);
    unsetenv("QSTANCU_THREADS");
}

TEST_CASE("max_abs_diff") {
    CHECK(max_abs_diff({1.0, 2.0}, {1.0, 2.5}) == 0.5);
    CHECK(max_abs_diff({}, {}) == 0.0);
    CHECK_THROWS_AS(max_abs_diff({1.0}, {1.0, 2.0}), std::invalid_argument);
}
