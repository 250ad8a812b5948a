#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "inertia_lab/entrywise.hpp"
#include "inertia_lab/linalg.hpp"

namespace inertia_lab::constructions {

using entrywise::DomainSpec;
using linalg::DenseMatrix;
using linalg::Inertia;
using linalg::SymMatrix;

/// Throws DomainError reporting the largest offending magnitude when some
/// entry of a lies outside dom. No-op when dom is empty.
void require_inside(const SymMatrix& a, const std::optional<DomainSpec>& dom, const char* what);

/// C = [[A, B], [B, A]].
SymMatrix block_pair(const SymMatrix& a, const SymMatrix& b);
/// J = (1/sqrt 2) [[Id, Id], [Id, -Id]], so J^T C J = (A + B) (+) (A - B).
DenseMatrix block_pair_frame(std::size_t n);

/// D = (-t0 Id_k) (+) A (+) ... (+) A with l + 2 copies of A.
SymMatrix replication(const SymMatrix& a, std::size_t k, std::size_t l, double t0,
                      const std::optional<DomainSpec>& dom = std::nullopt);

/// t0 * sum_{j < k} u^(j) (u^(j))^T for 2k - 1 distinct positive nodes u.
/// PSD of rank exactly k.
SymMatrix vandermonde_psd(std::size_t k, std::span<const double> u, double t0,
                          const std::optional<DomainSpec>& dom = std::nullopt);

struct MatrixPair {
    SymMatrix a;
    SymMatrix b;
};

/// A = t0 [[1,2],[2,4]], B = t0 [[2,3],[3,5]], A - B = -t0 1.
MatrixPair two_by_two_pair(double t0, const std::optional<DomainSpec>& dom = std::nullopt);

/// (k+1) x (k+1) matrix whose columns are v_1 = 1 and, for j >= 2, the
/// vector with j-1 ones followed by -(j-1) and zeros. Columns are mutually
/// orthogonal and unnormalized.
DenseMatrix helmert_basis(std::size_t k);

/// delta 1 1^T - epsilon sum_{j >= 2} v_j v_j^T with inertia (k, 0, 1).
SymMatrix counterexample_ectrex(std::size_t k, double delta, double epsilon,
                                const std::optional<DomainSpec>& dom = std::nullopt);
Inertia counterexample_ectrex_inertia(std::size_t k);

/// M_{k+1}(a, b) = (a - b) Id + b 1, requires 0 <= a < b.
SymMatrix m_matrix(std::size_t k, double a, double b);
/// Closed form: eigenvalue a - b (k times) and a + k b.
Inertia m_matrix_inertia(std::size_t k, double a, double b);

/// (M_{k+1}(a, b) (+) B) + epsilon 1. B must be PSD.
SymMatrix psi_map(double a, double b, std::size_t k, double epsilon, const SymMatrix& B,
                  const linalg::TolerancePolicy& tol = {});

/// Ordered partition of {0, ..., N-1} into non-empty blocks.
class Partition {
public:
    /// Throws InvalidArgument unless the blocks are non-empty, disjoint and cover 0..N-1.
    explicit Partition(std::vector<std::vector<std::size_t>> blocks);

    static Partition singletons(std::size_t n);
    /// {0}, {1}, ..., {n-2}, {n-1, ..., N-1}.
    static Partition tail(std::size_t n, std::size_t N);
    /// Block j gets sizes[j] consecutive indices.
    static Partition consecutive(std::span<const std::size_t> sizes);

    std::size_t size() const noexcept { return owner_.size(); }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
    std::size_t block_of(std::size_t i) const { return owner_.at(i); }

private:
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> owner_;
};

/// N x m 0/1 matrix with W(i, j) = 1 iff i lies in block j.
DenseMatrix weight_matrix(const Partition& pi);

/// up_pi(A) = W A W^T.
SymMatrix inflate(const Partition& pi, const SymMatrix& a);

/// [[4,2,3],[2,1,2],[3,2,4]].
SymMatrix judicious_matrix();
/// A^{(+)k} + t 1_{3k x 3k}.
SymMatrix judicious_pencil(std::size_t k, double t);
/// Roots of det(x - A)^{k-1} (x - 1) (x^2 - (8 + 3tk) x - 1 + tk), ascending.
std::vector<double> judicious_pencil_eigenvalues(std::size_t k, double t);
Inertia judicious_pencil_inertia(std::size_t k, double t);

}  // namespace inertia_lab::constructions
