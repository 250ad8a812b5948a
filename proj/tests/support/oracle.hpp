#pragma once

// Reference computations for tests. Nothing here calls the library's
// eigensolver: eigenvalue counts come from Householder tridiagonalization
// followed by Sturm counts, ranks from Gaussian elimination.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

struct Tridiagonal {
    std::vector<double> d;
    std::vector<double> e;  // e[i] couples i and i+1
};

inline Tridiagonal tridiagonalize(Dense a) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha += a[i][k] * a[i][k];
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (a[k + 1][k] > 0) alpha = -alpha;
        std::vector<double> v(n, 0.0);
        v[k + 1] = a[k + 1][k] - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = a[i][k];
        double vn = 0.0;
        for (double x : v) vn += x * x;
        if (vn == 0.0) continue;
        // a <- H a H with H = I - 2 v v^T / vn
        std::vector<double> p(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p[i] += a[i][j] * v[j];
        for (double& x : p) x *= 2.0 / vn;
        double kk = 0.0;
        for (std::size_t i = 0; i < n; ++i) kk += v[i] * p[i];
        kk /= vn;
        std::vector<double> q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = p[i] - kk * v[i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= v[i] * q[j] + q[i] * v[j];
    }
    Tridiagonal t;
    for (std::size_t i = 0; i < n; ++i) t.d.push_back(a[i][i]);
    for (std::size_t i = 0; i + 1 < n; ++i) t.e.push_back(a[i + 1][i]);
    return t;
}

/// Number of eigenvalues strictly below x.
inline std::size_t count_below(const Tridiagonal& t, double x) {
    std::size_t c = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < t.d.size(); ++i) {
        const double e2 = i == 0 ? 0.0 : t.e[i - 1] * t.e[i - 1];
        q = t.d[i] - x - (i == 0 ? 0.0 : e2 / q);
        if (q == 0.0) q = -1e-300;
        if (q < 0) ++c;
    }
    return c;
}

struct Counts {
    std::size_t neg = 0, zero = 0, pos = 0;
};

inline double frobenius(const Dense& a) {
    double s = 0.0;
    for (const auto& r : a)
        for (double x : r) s += x * x;
    return std::sqrt(s);
}

/// Inertia with zero band |lambda| <= rel * max(1, ||A||_F).
inline Counts inertia(const Dense& a, double rel = 1e-9) {
    const double thr = rel * std::max(1.0, frobenius(a));
    const auto t = tridiagonalize(a);
    Counts c;
    c.neg = count_below(t, -thr);
    const std::size_t le = count_below(t, thr);
    c.zero = le - c.neg;
    c.pos = a.size() - le;
    return c;
}

/// k-th smallest eigenvalue by bisection on the Sturm count.
inline double eigenvalue(const Dense& a, std::size_t k) {
    const auto t = tridiagonalize(a);
    double r = 0.0;
    for (std::size_t i = 0; i < t.d.size(); ++i) {
        double s = std::abs(t.d[i]);
        if (i > 0) s += std::abs(t.e[i - 1]);
        if (i < t.e.size()) s += std::abs(t.e[i]);
        r = std::max(r, s);
    }
    double lo = -r - 1.0, hi = r + 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(t, mid) > k) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Numerical rank by Gaussian elimination with full pivoting.
inline std::size_t rank(Dense a, double rel = 1e-9) {
    const std::size_t n = a.size();
    if (n == 0) return 0;
    const std::size_t m = a[0].size();
    double scale = 0.0;
    for (const auto& r : a)
        for (double x : r) scale = std::max(scale, std::abs(x));
    const double thr = rel * std::max(1.0, scale);
    std::size_t r = 0;
    std::vector<bool> used_col(m, false);
    for (std::size_t step = 0; step < std::min(n, m); ++step) {
        double best = 0.0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = r; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (!used_col[j] && std::abs(a[i][j]) > best) {
                    best = std::abs(a[i][j]);
                    bi = i;
                    bj = j;
                }
        if (best <= thr) break;
        std::swap(a[r], a[bi]);
        used_col[bj] = true;
        for (std::size_t i = r + 1; i < n; ++i) {
            const double f = a[i][bj] / a[r][bj];
            for (std::size_t j = 0; j < m; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<double>(n, 0.0)); }

inline Dense block_diag(const Dense& a, const Dense& b) {
    const std::size_t n = a.size(), m = b.size();
    Dense out = zeros(n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out[n + i][n + j] = b[i][j];
    return out;
}

template <class F>
Dense map(const Dense& a, F f) {
    Dense out = a;
    for (auto& r : out)
        for (double& x : r) x = f(x);
    return out;
}

}  // namespace oracle
