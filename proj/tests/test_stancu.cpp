#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qstancu/stancu.hpp"

#include "qbernstein_oracle.hpp"

using namespace qstancu;

namespace {

const Rational half(1, 2);
const Rational quarter(1, 4);

const std::vector<Rational> sweep_q{Rational(1, 4), half, Rational(3, 4)};
const std::vector<Rational> sweep_alpha{Rational(0), quarter, Rational(1), Rational(3)};

std::vector<Rational> eighths() {
    std::vector<Rational> xs;
    for (long i = 0; i <= 8; ++i) xs.push_back(Rational(i, 8));
    return xs;
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(QParams<Rational>(Rational(0), Rational(0)), invalid_q_error);
    CHECK_THROWS_AS(QParams<Rational>(Rational(1), Rational(0)), invalid_q_error);
    CHECK_THROWS_AS(QParams<Rational>(half, Rational(-1)), invalid_domain_error);
    const QParams<Rational> p(half, quarter);
    CHECK(p.gamma() == half);
    const QParams<Rational> d = p.descend();
    CHECK(d.q() == half);
    CHECK(d.alpha() == Rational(1, 10));
    CHECK(shift_node_binomial(p, half) == Rational(3, 5));
    CHECK(shift_node_onestep(p, half) == Rational(1, 5));
}

TEST_CASE("product pieces") {
    const QParams<Rational> p(half, quarter);
    CHECK(rising_product(p, half, 0) == Rational(1));
    CHECK(rising_product(p, half, 2) == Rational(3, 8));
    CHECK(falling_product(p, half, 0) == Rational(1));
    CHECK(falling_product(p, half, 2) == Rational(1, 2));
}

TEST_CASE("basis frozen values") {
    const QParams<Rational> p(half, Rational(0));
    const BasisVector<Rational> b = basis(p, 2, half);
    REQUIRE(b.values.size() == 3);
    CHECK(b.values[0] == Rational(3, 8));
    CHECK(b.values[1] == Rational(3, 8));
    CHECK(b.values[2] == Rational(1, 4));
}

TEST_CASE("representation equivalence") {
    for (const Rational& q : sweep_q)
        for (const Rational& alpha : sweep_alpha) {
            const QParams<Rational> p(q, alpha);
            for (int n = 1; n <= 6; ++n)
                for (const Rational& x : eighths()) {
                    if (alpha.is_zero() && x.is_zero()) continue;
                    const BasisVector<Rational> prod = basis_product_form(p, n, x);
                    const BasisVector<Rational> poch = basis_pochhammer_form(p, n, x);
                    for (std::size_t k = 0; k < prod.values.size(); ++k)
                        CHECK(prod.values[k] == poch.values[k]);
                }
        }
}

TEST_CASE("degenerate point handling") {
    const QParams<Rational> p(half, Rational(0));
    CHECK_THROWS_AS(basis_pochhammer_form(p, 3, Rational(0)), degenerate_point_error);
    // automatic falls back to the product form, which stays defined
    const BasisVector<Rational> b = basis(p, 3, Rational(0));
    CHECK(b.values[0] == Rational(1));
    CHECK(b.values[1] == Rational(0));
    CHECK(b.values[2] == Rational(0));
    CHECK(b.values[3] == Rational(0));
}

TEST_CASE("partition of unity, positivity, endpoints") {
    for (const Rational& q : sweep_q)
        for (const Rational& alpha : sweep_alpha) {
            const QParams<Rational> p(q, alpha);
            for (int n = 1; n <= 6; ++n) {
                for (const Rational& x : eighths()) {
                    const BasisVector<Rational> b = basis(p, n, x);
                    Rational sum(0);
                    for (const Rational& v : b.values) {
                        CHECK(v >= Rational(0));
                        sum += v;
                    }
                    CHECK(sum == Rational(1));
                }
                const BasisVector<Rational> left = basis(p, n, Rational(0));
                const BasisVector<Rational> right = basis(p, n, Rational(1));
                for (int k = 0; k <= n; ++k) {
                    CHECK(left.values[static_cast<std::size_t>(k)] == (k == 0 ? Rational(1) : Rational(0)));
                    CHECK(right.values[static_cast<std::size_t>(k)] == (k == n ? Rational(1) : Rational(0)));
                }
            }
        }
}

TEST_CASE("float endpoints are exact point masses") {
    const QParams<double> p(0.5, 0.25);
    const BasisVector<double> left = basis(p, 5, 0.0);
    const BasisVector<double> right = basis(p, 5, 1.0);
    for (int k = 0; k <= 5; ++k) {
        CHECK(left.values[static_cast<std::size_t>(k)] == (k == 0 ? 1.0 : 0.0));
        CHECK(right.values[static_cast<std::size_t>(k)] == (k == 5 ? 1.0 : 0.0));
    }
}

TEST_CASE("apply frozen value and endpoint interpolation") {
    const QParams<Rational> bern(half, Rational(0));
    CHECK(apply(bern, 2, SampledFunction<Rational>::monomial(2), half) == Rational(5, 12));

    const QParams<Rational> p(half, quarter);
    const auto f = SampledFunction<Rational>::polynomial({Rational(1), Rational(-2), Rational(3)});
    for (int n = 1; n <= 8; ++n) {
        CHECK(apply(p, n, f, Rational(0)) == f(Rational(0)));
        CHECK(apply(p, n, f, Rational(1)) == f(Rational(1)));
    }

    const QParams<double> pf(0.5, 0.25);
    const auto g = SampledFunction<double>::builtin("exp");
    CHECK(apply(pf, 6, g, 0.0) == 1.0);
    CHECK(apply(pf, 6, g, 1.0) == std::exp(1.0));
}

TEST_CASE("closed-form moments match direct summation") {
    for (const Rational& q : sweep_q)
        for (const Rational& alpha : sweep_alpha) {
            const QParams<Rational> p(q, alpha);
            for (int n = 1; n <= 8; ++n)
                for (const Rational& x : eighths())
                    for (int m = 0; m <= 2; ++m)
                        CHECK(moment_closed_form(p, n, m, x) ==
                              apply(p, n, SampledFunction<Rational>::monomial(m), x));
        }

    const QParams<Rational> p(half, quarter);
    CHECK(moment_closed_form(p, 3, 2, half) == Rational(29, 70));
    CHECK(moment_closed_form(p, 5, 0, half) == Rational(1));
    CHECK(moment_closed_form(p, 5, 1, Rational(3, 8)) == Rational(3, 8));
    CHECK_THROWS_AS(moment_closed_form(p, 3, 3, half), unsupported_order_error);
    CHECK_THROWS_AS(moment_closed_form(p, 3, -1, half), unsupported_order_error);
}

TEST_CASE("moment recurrences match direct summation") {
    for (const Rational& q : sweep_q)
        for (const Rational& alpha : sweep_alpha) {
            const QParams<Rational> p(q, alpha);
            for (int n = 1; n <= 6; ++n)
                for (const Rational& x : {Rational(0), Rational(1, 8), half, Rational(7, 8), Rational(1)})
                    for (int m = 0; m <= 4; ++m) {
                        const Rational direct =
                            apply(p, n, SampledFunction<Rational>::monomial(m + 1), x);
                        CHECK(moment_recurrence_binomial(p, n, m, x) == direct);
                        CHECK(moment_recurrence_videnskii(p, n, m, x) == direct);
                    }
        }
}

TEST_CASE("basis recurrence identity") {
    for (const Rational& q : sweep_q)
        for (const Rational& alpha : sweep_alpha) {
            const QParams<Rational> p(q, alpha);
            for (int n = 1; n <= 6; ++n)
                for (const Rational& x : eighths())
                    for (int k = 0; k <= n; ++k)
                        CHECK(basis_recurrence_check(p, n, k, x));
        }
    const QParams<Rational> p(half, quarter);
    CHECK_THROWS_AS(basis_recurrence_check(p, 3, 4, half), index_out_of_range_error);
    CHECK_THROWS_AS(basis_recurrence_check(p, 3, -1, half), index_out_of_range_error);
}

TEST_CASE("alpha = 0 reduces to q-Bernstein") {
    for (const Rational& q : sweep_q) {
        const QParams<Rational> p(q, Rational(0));
        for (int n = 1; n <= 8; ++n)
            for (const Rational& x : eighths()) {
                const BasisVector<Rational> b = basis(p, n, x);
                for (int k = 0; k <= n; ++k)
                    CHECK(b.values[static_cast<std::size_t>(k)] == oracle::qbernstein_basis(n, k, q, x));
                for (int m = 0; m <= 3; ++m) {
                    const auto f = SampledFunction<Rational>::monomial(m);
                    CHECK(apply(p, n, f, x) ==
                          oracle::qbernstein_apply(n, q, [&](const Rational& t) { return f(t); }, x));
                }
            }
    }
}

TEST_CASE("exact degree cap") {
    const int saved = exact_degree_cap();
    set_exact_degree_cap(4);
    const QParams<Rational> p(half, quarter);
    CHECK_THROWS_AS(basis(p, 5, half), exact_cap_exceeded_error);
    CHECK_THROWS_AS(apply(p, 5, SampledFunction<Rational>::monomial(1), half),
                    exact_cap_exceeded_error);
    CHECK_NOTHROW(basis(p, 4, half));
    // closed forms never build the basis, so the cap does not apply
    CHECK(moment_closed_form(p, 100, 1, half) == half);
    // float mode is uncapped
    const QParams<double> pf(0.5, 0.25);
    CHECK_NOTHROW(basis(pf, 64, 0.5));
    set_exact_degree_cap(saved);
}

TEST_CASE("domain errors") {
    const QParams<Rational> p(half, quarter);
    CHECK_THROWS_AS(basis(p, 0, half), invalid_domain_error);
    CHECK_THROWS_AS(basis(p, 3, Rational(-1, 8)), invalid_domain_error);
    CHECK_THROWS_AS(basis(p, 3, Rational(9, 8)), invalid_domain_error);
    CHECK_THROWS_AS(apply(p, -1, SampledFunction<Rational>::monomial(1), half),
                    invalid_domain_error);
    CHECK_THROWS_AS(moment_recurrence_binomial(p, 0, 1, half), invalid_domain_error);
    CHECK_THROWS_AS(moment_recurrence_videnskii(p, 3, -1, half), invalid_domain_error);
}
