#pragma once

#include <cstdint>
#include <vector>

#include "inertia_lab/linalg.hpp"
#include "inertia_lab/rng.hpp"
#include "oracle.hpp"

namespace testutil {

using inertia_lab::linalg::SymMatrix;

inline oracle::Dense dense(const SymMatrix& a) { return a.to_rows(); }

inline oracle::Counts counts(const SymMatrix& a) { return oracle::inertia(dense(a)); }

/// Symmetric matrix with independent entries uniform in (-s, s).
inline SymMatrix random_sym(std::size_t n, inertia_lab::Rng& rng, double s = 1.0) {
    return SymMatrix::generate(n, [&](std::size_t, std::size_t) { return rng.uniform(-s, s); });
}

/// X X^T with X of size n x r, entries uniform in (lo, hi).
inline SymMatrix random_gram(std::size_t n, std::size_t r, inertia_lab::Rng& rng, double lo = -1.0, double hi = 1.0) {
    std::vector<double> x(n * r);
    for (double& v : x) v = rng.uniform(lo, hi);
    return SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t c = 0; c < r; ++c) s += x[i * r + c] * x[j * r + c];
        return s;
    });
}

inline double max_abs_diff(const SymMatrix& a, const SymMatrix& b) { return (a - b).max_abs(); }

}  // namespace testutil
