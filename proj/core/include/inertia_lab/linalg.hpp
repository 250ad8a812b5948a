#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace inertia_lab::linalg {

/// Dense row-major rectangular matrix. Used for eigenvector frames, weight
/// matrices and Gram vectors; symmetric data lives in SymMatrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_).subspan(i * cols_, cols_);
    }

    DenseMatrix transpose() const;
    double frobenius_norm() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

/// Dense real symmetric matrix. Storage is the full n x n array with the
/// lower triangle mirrored from the upper one, so a(i,j) == a(j,i) exactly.
/// Instances are immutable; every operation returns a new value.
class SymMatrix {
public:
    /// Builds from a full row-major array, averaging a(i,j) and a(j,i).
    /// Throws DimensionError for n == 0 or a wrong entry count and
    /// InvalidArgument for non-finite entries.
    SymMatrix(std::size_t n, std::span<const double> full);
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
    /// Evaluates gen(i, j) for i <= j and mirrors.
    static SymMatrix generate(std::size_t n, const std::function<double(std::size_t, std::size_t)>& gen);
    static SymMatrix zeros(std::size_t n);
    static SymMatrix identity(std::size_t n);
    /// The all-ones matrix 1_{n x n}.
    static SymMatrix ones(std::size_t n);
    static SymMatrix diagonal(std::span<const double> d);
    static SymMatrix diagonal(std::initializer_list<double> d);
    /// u u^T.
    static SymMatrix outer(std::span<const double> u);
    /// The symmetric part (M + M^T) / 2 of a square dense matrix.
    static SymMatrix symmetric_part(const DenseMatrix& m);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<const double> data() const noexcept { return a_; }
    std::vector<std::vector<double>> to_rows() const;
    DenseMatrix to_dense() const;

    double frobenius_norm() const;
    double max_abs() const;
    double trace() const;

    /// Leading principal m x m submatrix.
    SymMatrix leading(std::size_t m) const;
    /// Principal submatrix on the given index set.
    SymMatrix principal(std::span<const std::size_t> idx) const;

    SymMatrix operator+(const SymMatrix& o) const;
    SymMatrix operator-(const SymMatrix& o) const;
    SymMatrix operator-() const;
    SymMatrix scaled(double c) const;
    /// this + c * 1_{n x n}.
    SymMatrix shifted(double c) const;

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    struct Raw {};
    SymMatrix(Raw, std::size_t n, std::vector<double> a) : n_(n), a_(std::move(a)) {}

    std::size_t n_ = 0;
    std::vector<double> a_;
};

inline SymMatrix operator*(double c, const SymMatrix& a) { return a.scaled(c); }

/// Counts of negative, zero and positive eigenvalues.
struct Inertia {
    std::size_t n_neg = 0;
    std::size_t n_zero = 0;
    std::size_t n_pos = 0;

    std::size_t dimension() const noexcept { return n_neg + n_zero + n_pos; }
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

Inertia operator+(const Inertia& a, const Inertia& b);

/// Thresholds for eigenvalue-zero classification and Jacobi convergence.
/// Both must lie in (0, 1e-2).
struct TolerancePolicy {
    double rel_zero = 1e-9;
    double eig_convergence = 1e-13;

    /// Throws InvalidArgument when either threshold is out of range.
    void validate() const;
};

struct EigenDecomposition {
    std::vector<double> values;  ///< ascending
    DenseMatrix vectors;         ///< column j is the unit eigenvector for values[j]
};

/// Cyclic Jacobi with threshold sweeps (cap 100). Sweeps stop once the
/// off-diagonal Frobenius norm falls below eig_convergence * ||A||_F.
/// Eigenvector signs are normalized so the largest-magnitude component is
/// positive. Throws ConvergenceError on hitting the cap.
EigenDecomposition eig_sym(const SymMatrix& a, const TolerancePolicy& tol = {});

/// Eigenvalues only (same solver, ascending).
std::vector<double> eigenvalues(const SymMatrix& a, const TolerancePolicy& tol = {});

/// Zero threshold used by inertia(): rel_zero * max(1, ||A||_F).
double zero_threshold(const SymMatrix& a, const TolerancePolicy& tol);

Inertia inertia(const SymMatrix& a, const TolerancePolicy& tol = {});
Inertia inertia_from_values(std::span<const double> values, double zero_threshold);

std::size_t rank(const SymMatrix& a, const TolerancePolicy& tol = {});

/// closed == false: exactly k negative eigenvalues (S_n^(k)).
/// closed == true: at most k negative eigenvalues (the closure class).
bool is_member(const SymMatrix& a, std::size_t k, bool closed, const TolerancePolicy& tol = {});

bool is_psd(const SymMatrix& a, const TolerancePolicy& tol = {});

/// A >= B in the Loewner order, i.e. A - B has no negative eigenvalue.
bool loewner_geq(const SymMatrix& a, const SymMatrix& b, const TolerancePolicy& tol = {});

/// Entrywise (Schur) product.
SymMatrix schur_product(const SymMatrix& a, const SymMatrix& b);

/// Entrywise power A^(o alpha) of a tuple: prod_p (A_p)_{ij}^{alpha_p}, with 0^0 = 1.
SymMatrix hadamard_power(std::span<const SymMatrix> tuple, std::span<const unsigned> alpha);

/// Block-diagonal assembly.
SymMatrix direct_sum(std::span<const SymMatrix> blocks);
SymMatrix direct_sum(std::initializer_list<SymMatrix> blocks);
/// A (+) A (+) ... (copies times).
SymMatrix direct_power(const SymMatrix& a, std::size_t copies);

/// Q^T A Q for square Q.
SymMatrix congruence(const SymMatrix& a, const DenseMatrix& q);

/// x^p by repeated multiplication, 0^0 = 1.
double int_pow(double x, unsigned p);

}  // namespace inertia_lab::linalg
