#pragma once

// Self-contained q-Bernstein evaluator used as an independent oracle.
// Deliberately avoids the library's q-helpers: the Gaussian binomials come
// from the Pascal recurrence [n k] = [n-1 k-1] + q^k [n-1 k], the nodes and
// basis factors from plain loops.

#include <vector>

namespace oracle {

template <typename S>
std::vector<S> gauss_row(int n, const S& q) {
    std::vector<S> row{S(1)};
    for (int m = 1; m <= n; ++m) {
        std::vector<S> next(static_cast<std::size_t>(m) + 1, S(0));
        S qk(1);
        for (int k = 0; k <= m; ++k) {
            if (k > 0) next[k] += row[static_cast<std::size_t>(k - 1)];
            if (k < m) next[k] += qk * row[static_cast<std::size_t>(k)];
            qk = qk * q;
        }
        row = std::move(next);
    }
    return row;
}

template <typename S>
S qint(int n, const S& q) {
    S sum(0), pw(1);
    for (int i = 0; i < n; ++i) {
        sum += pw;
        pw = pw * q;
    }
    return sum;
}

// p_{n,k}(x) = [n k]_q x^k prod_{s=0}^{n-k-1} (1 - q^s x)
template <typename S>
S qbernstein_basis(int n, int k, const S& q, const S& x) {
    S v = gauss_row(n, q)[static_cast<std::size_t>(k)];
    for (int i = 0; i < k; ++i) v = v * x;
    S qs(1);
    for (int s = 0; s < n - k; ++s) {
        v = v * (S(1) - qs * x);
        qs = qs * q;
    }
    return v;
}

template <typename S, typename F>
S qbernstein_apply(int n, const S& q, const F& f, const S& x) {
    const std::vector<S> row = gauss_row(n, q);
    const S qn = qint(n, q);
    S acc(0);
    for (int k = 0; k <= n; ++k) {
        S basis = row[static_cast<std::size_t>(k)];
        for (int i = 0; i < k; ++i) basis = basis * x;
        S qs(1);
        for (int s = 0; s < n - k; ++s) {
            basis = basis * (S(1) - qs * x);
            qs = qs * q;
        }
        acc += f(qint(k, q) / qn) * basis;
    }
    return acc;
}

} // namespace oracle
