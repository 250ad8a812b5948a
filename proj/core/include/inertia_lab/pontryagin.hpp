#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "inertia_lab/linalg.hpp"

namespace inertia_lab::pontryagin {

using linalg::DenseMatrix;
using linalg::SymMatrix;

/// J = Id_{d_plus} (+) (-Id_{d_minus}).
struct Signature {
    std::size_t d_plus = 0;
    std::size_t d_minus = 0;

    std::size_t dimension() const noexcept { return d_plus + d_minus; }
    DenseMatrix involution() const;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct GramRealization {
    Signature signature;
    /// One row per vector, dimension() columns.
    DenseMatrix vectors;
    double reconstruction_error = 0.0;
};

/// [v_i, v_j] = v_i^T J v_j for the rows of vectors.
SymMatrix gram_of(const DenseMatrix& vectors, const Signature& sig);

/// Realizes A as an indefinite Gram matrix with negative index exactly k.
/// The plus block uses the eigenvectors of the non-negative eigenvalues
/// (d_plus = n - r) and the minus block those of the r negative ones,
/// padded with k - r zero coordinates. Throws InvalidArgument when A has
/// more than k negative eigenvalues.
GramRealization gram_realize(const SymMatrix& a, std::size_t k, const linalg::TolerancePolicy& tol = {});

/// Entry n-1 is the number of negative eigenvalues of the leading n x n block.
std::vector<std::size_t> leading_negativity_profile(const SymMatrix& a, const linalg::TolerancePolicy& tol = {});

/// 1-based index N from which the profile stays constant. nullopt when the
/// final step still increases and the last value is below k. Throws
/// InvalidArgument when the profile decreases or exceeds k.
std::optional<std::size_t> stabilization_index(std::span<const std::size_t> profile, std::size_t k);

/// Leading N x N block of the lift that replicates the last row and column
/// of A. Throws InvalidArgument when N < n.
SymMatrix lift_finite(const SymMatrix& a, std::size_t N);

}  // namespace inertia_lab::pontryagin
