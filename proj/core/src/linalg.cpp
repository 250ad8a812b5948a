#include "inertia_lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "inertia_lab/errors.hpp"

namespace inertia_lab::linalg {

// ---------------------------------------------------------------- DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw DimensionError("DenseMatrix: data size does not match shape");
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("DenseMatrix product: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("DenseMatrix difference: shapes differ");
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

// ------------------------------------------------------------------ SymMatrix

SymMatrix::SymMatrix(std::size_t n, std::span<const double> full) : n_(n), a_(n * n) {
    if (n == 0) throw DimensionError("SymMatrix: dimension must be positive");
    if (full.size() != n * n) throw DimensionError("SymMatrix: expected n*n entries");
    for (double v : full)
        if (!std::isfinite(v)) throw InvalidArgument("SymMatrix: non-finite entry");
    for (std::size_t i = 0; i < n; ++i) {
        a_[i * n + i] = full[i * n + i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (full[i * n + j] + full[j * n + i]);
            a_[i * n + j] = v;
            a_[j * n + i] = v;
        }
    }
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> r;
    for (const auto& row : rows) r.emplace_back(row);
    *this = from_rows(r);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> full;
    full.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) throw DimensionError("SymMatrix: rows must form a square array");
        full.insert(full.end(), row.begin(), row.end());
    }
    return SymMatrix(n, full);
}

SymMatrix SymMatrix::generate(std::size_t n,
                              const std::function<double(std::size_t, std::size_t)>& gen) {
    if (n == 0) throw DimensionError("SymMatrix: dimension must be positive");
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = gen(i, j);
            if (!std::isfinite(v)) throw InvalidArgument("SymMatrix: non-finite entry");
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    return SymMatrix(Raw{}, n, std::move(a));
}

SymMatrix SymMatrix::zeros(std::size_t n) {
    return generate(n, [](std::size_t, std::size_t) { return 0.0; });
}

SymMatrix SymMatrix::identity(std::size_t n) {
    return generate(n, [](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; });
}

SymMatrix SymMatrix::ones(std::size_t n) {
    return generate(n, [](std::size_t, std::size_t) { return 1.0; });
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
    return generate(d.size(), [&](std::size_t i, std::size_t j) { return i == j ? d[i] : 0.0; });
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> d) {
    std::vector<double> v(d);
    return diagonal(std::span<const double>(v));
}

SymMatrix SymMatrix::outer(std::span<const double> u) {
    return generate(u.size(), [&](std::size_t i, std::size_t j) { return u[i] * u[j]; });
}

SymMatrix SymMatrix::symmetric_part(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("symmetric_part: matrix is not square");
    return SymMatrix(m.rows(), m.data());
}

std::vector<std::vector<double>> SymMatrix::to_rows() const {
    std::vector<std::vector<double>> rows(n_);
    for (std::size_t i = 0; i < n_; ++i) rows[i].assign(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
    return rows;
}

DenseMatrix SymMatrix::to_dense() const { return DenseMatrix(n_, n_, a_); }

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
    return t;
}

SymMatrix SymMatrix::leading(std::size_t m) const {
    if (m == 0 || m > n_) throw DimensionError("leading: size out of range");
    return generate(m, [&](std::size_t i, std::size_t j) { return (*this)(i, j); });
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> idx) const {
    for (std::size_t i : idx)
        if (i >= n_) throw DimensionError("principal: index out of range");
    return generate(idx.size(), [&](std::size_t i, std::size_t j) { return (*this)(idx[i], idx[j]); });
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
    if (o.n_ != n_) throw DimensionError("SymMatrix sum: dimensions differ");
    std::vector<double> a(a_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a_[i] + o.a_[i];
    return SymMatrix(Raw{}, n_, std::move(a));
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
    if (o.n_ != n_) throw DimensionError("SymMatrix difference: dimensions differ");
    std::vector<double> a(a_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a_[i] - o.a_[i];
    return SymMatrix(Raw{}, n_, std::move(a));
}

SymMatrix SymMatrix::operator-() const { return scaled(-1.0); }

SymMatrix SymMatrix::scaled(double c) const {
    std::vector<double> a(a_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = c * a_[i];
    return SymMatrix(Raw{}, n_, std::move(a));
}

SymMatrix SymMatrix::shifted(double c) const {
    std::vector<double> a(a_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a_[i] + c;
    return SymMatrix(Raw{}, n_, std::move(a));
}

// -------------------------------------------------------------------- Inertia

Inertia operator+(const Inertia& a, const Inertia& b) {
    return {a.n_neg + b.n_neg, a.n_zero + b.n_zero, a.n_pos + b.n_pos};
}

void TolerancePolicy::validate() const {
    auto ok = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1e-2; };
    if (!ok(rel_zero)) throw InvalidArgument("TolerancePolicy: rel_zero must lie in (0, 1e-2)");
    if (!ok(eig_convergence))
        throw InvalidArgument("TolerancePolicy: eig_convergence must lie in (0, 1e-2)");
}

// ------------------------------------------------------------------ eigensolver

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
}

// One Jacobi rotation annihilating a(p,q); updates a and the accumulated frame v.
void rotate(std::vector<double>& a, std::vector<double>& v, std::size_t n, std::size_t p,
            std::size_t q) {
    const double apq = a[p * n + q];
    const double app = a[p * n + p];
    const double aqq = a[q * n + q];
    const double theta = (aqq - app) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double akp = a[k * n + p];
        const double akq = a[k * n + q];
        const double np = c * akp - s * akq;
        const double nq = s * akp + c * akq;
        a[k * n + p] = a[p * n + k] = np;
        a[k * n + q] = a[q * n + k] = nq;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = a[q * n + p] = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v[k * n + p];
        const double vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

}  // namespace

EigenDecomposition eig_sym(const SymMatrix& m, const TolerancePolicy& tol) {
    tol.validate();
    const std::size_t n = m.size();
    std::vector<double> a(m.data().begin(), m.data().end());
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double target = tol.eig_convergence * m.frobenius_norm();
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm(a, n);
        if (off <= target) break;
        // Threshold pass: early sweeps skip entries that are already small
        // relative to the remaining off-diagonal mass.
        const double threshold = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double g = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(a[p * n + p]) + g == std::abs(a[p * n + p]) &&
                    std::abs(a[q * n + q]) + g == std::abs(a[q * n + q])) {
                    a[p * n + q] = a[q * n + p] = 0.0;
                    continue;
                }
                if (std::abs(apq) <= threshold) continue;
                rotate(a, v, n, p, q);
            }
    }
    if (sweep == kMaxSweeps && off_diagonal_norm(a, n) > target) {
        throw ConvergenceError("eig_sym: no convergence after " + std::to_string(kMaxSweeps) +
                               " Jacobi sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.values[c] = a[src * n + src];
        std::size_t arg = 0;
        for (std::size_t r = 1; r < n; ++r)
            if (std::abs(v[r * n + src]) > std::abs(v[arg * n + src]) + 1e-14) arg = r;
        const double sign = v[arg * n + src] < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = sign * v[r * n + src];
    }
    return out;
}

std::vector<double> eigenvalues(const SymMatrix& a, const TolerancePolicy& tol) {
    return eig_sym(a, tol).values;
}

double zero_threshold(const SymMatrix& a, const TolerancePolicy& tol) {
    return tol.rel_zero * std::max(1.0, a.frobenius_norm());
}

Inertia inertia_from_values(std::span<const double> values, double threshold) {
    Inertia in;
    for (double l : values) {
        if (std::abs(l) <= threshold) ++in.n_zero;
        else if (l < 0.0) ++in.n_neg;
        else ++in.n_pos;
    }
    return in;
}

Inertia inertia(const SymMatrix& a, const TolerancePolicy& tol) {
    const auto values = eigenvalues(a, tol);
    return inertia_from_values(values, zero_threshold(a, tol));
}

std::size_t rank(const SymMatrix& a, const TolerancePolicy& tol) {
    return a.size() - inertia(a, tol).n_zero;
}

bool is_member(const SymMatrix& a, std::size_t k, bool closed, const TolerancePolicy& tol) {
    const auto neg = inertia(a, tol).n_neg;
    return closed ? neg <= k : neg == k;
}

bool is_psd(const SymMatrix& a, const TolerancePolicy& tol) { return inertia(a, tol).n_neg == 0; }

bool loewner_geq(const SymMatrix& a, const SymMatrix& b, const TolerancePolicy& tol) {
    if (a.size() != b.size()) throw DimensionError("loewner_geq: dimensions differ");
    return is_psd(a - b, tol);
}

SymMatrix schur_product(const SymMatrix& a, const SymMatrix& b) {
    if (a.size() != b.size()) throw DimensionError("schur_product: dimensions differ");
    return SymMatrix::generate(a.size(), [&](std::size_t i, std::size_t j) { return a(i, j) * b(i, j); });
}

double int_pow(double x, unsigned p) {
    double r = 1.0;
    for (unsigned i = 0; i < p; ++i) r *= x;
    return r;
}

SymMatrix hadamard_power(std::span<const SymMatrix> tuple, std::span<const unsigned> alpha) {
    if (tuple.empty()) throw DimensionError("hadamard_power: empty tuple");
    if (alpha.size() != tuple.size()) throw DimensionError("hadamard_power: arity mismatch");
    const std::size_t n = tuple.front().size();
    for (const auto& m : tuple)
        if (m.size() != n) throw DimensionError("hadamard_power: dimensions differ");
    return SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
        double v = 1.0;
        for (std::size_t p = 0; p < tuple.size(); ++p) v *= int_pow(tuple[p](i, j), alpha[p]);
        return v;
    });
}

SymMatrix direct_sum(std::span<const SymMatrix> blocks) {
    if (blocks.empty()) throw DimensionError("direct_sum: empty block list");
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size();
    std::vector<double> full(n * n, 0.0);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) full[(off + i) * n + off + j] = b(i, j);
        off += b.size();
    }
    return SymMatrix(n, full);
}

SymMatrix direct_sum(std::initializer_list<SymMatrix> blocks) {
    std::vector<SymMatrix> v(blocks);
    return direct_sum(std::span<const SymMatrix>(v));
}

SymMatrix direct_power(const SymMatrix& a, std::size_t copies) {
    if (copies == 0) throw DimensionError("direct_power: need at least one copy");
    std::vector<SymMatrix> v(copies, a);
    return direct_sum(std::span<const SymMatrix>(v));
}

SymMatrix congruence(const SymMatrix& a, const DenseMatrix& q) {
    if (q.rows() != a.size()) throw DimensionError("congruence: shape mismatch");
    const DenseMatrix r = q.transpose() * a.to_dense() * q;
    return SymMatrix::symmetric_part(r);
}

}  // namespace inertia_lab::linalg
