#include "inertia_lab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "inertia_lab/errors.hpp"

namespace inertia_lab::constructions {

void require_inside(const SymMatrix& a, const std::optional<DomainSpec>& dom, const char* what) {
    if (!dom) return;
    bool bad = false;
    std::size_t bi = 0, bj = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) {
            const double v = a(i, j);
            if (dom->contains(v)) continue;
            if (!bad || std::abs(v) > std::abs(worst)) {
                bi = i;
                bj = j;
                worst = v;
            }
            bad = true;
        }
    if (!bad) return;
    std::ostringstream os;
    os.precision(17);
    os << what << ": entry (" << bi + 1 << ", " << bj + 1 << ") = " << worst << " lies outside "
       << dom->describe() << "; largest offending magnitude " << std::abs(worst);
    throw DomainError(os.str(), bi, bj, 0, worst);
}

SymMatrix block_pair(const SymMatrix& a, const SymMatrix& b) {
    if (a.size() != b.size()) throw DimensionError("block_pair: dimensions differ");
    const std::size_t n = a.size();
    return SymMatrix::generate(2 * n, [&](std::size_t i, std::size_t j) {
        const bool same = (i < n) == (j < n);
        return same ? a(i % n, j % n) : b(i % n, j % n);
    });
}

DenseMatrix block_pair_frame(std::size_t n) {
    const double s = 1.0 / std::sqrt(2.0);
    DenseMatrix j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, i) = s;
        j(i, n + i) = s;
        j(n + i, i) = s;
        j(n + i, n + i) = -s;
    }
    return j;
}

SymMatrix replication(const SymMatrix& a, std::size_t k, std::size_t l, double t0,
                      const std::optional<DomainSpec>& dom) {
    if (k == 0) throw InvalidArgument("replication: k must be positive");
    if (!(t0 > 0.0) || !std::isfinite(t0)) throw InvalidArgument("replication: t0 must be positive");
    std::vector<SymMatrix> blocks;
    blocks.push_back(SymMatrix::identity(k).scaled(-t0));
    for (std::size_t c = 0; c < l + 2; ++c) blocks.push_back(a);
    SymMatrix d = linalg::direct_sum(blocks);
    if (dom && !dom->contains(-t0)) {
        std::ostringstream os;
        os.precision(17);
        os << "replication: -t0 = " << -t0 << " lies outside " << dom->describe();
        throw DomainError(os.str(), 0, 0, 0, -t0);
    }
    require_inside(a, dom, "replication");
    return d;
}

SymMatrix vandermonde_psd(std::size_t k, std::span<const double> u, double t0,
                          const std::optional<DomainSpec>& dom) {
    if (k == 0) throw InvalidArgument("vandermonde_psd: k must be positive");
    if (u.size() != 2 * k - 1)
        throw DimensionError("vandermonde_psd: expected " + std::to_string(2 * k - 1) + " nodes");
    if (!(t0 > 0.0)) throw InvalidArgument("vandermonde_psd: t0 must be positive");
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0) || !std::isfinite(u[i])) throw InvalidArgument("vandermonde_psd: nodes must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (u[i] == u[j]) throw InvalidArgument("vandermonde_psd: nodes must be distinct");
    }
    SymMatrix b = SymMatrix::generate(u.size(), [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (unsigned p = 0; p < k; ++p) s += linalg::int_pow(u[i] * u[j], p);
        return t0 * s;
    });
    require_inside(b, dom, "vandermonde_psd");
    return b;
}

MatrixPair two_by_two_pair(double t0, const std::optional<DomainSpec>& dom) {
    if (!(t0 > 0.0) || !std::isfinite(t0)) throw InvalidArgument("two_by_two_pair: t0 must be positive");
    MatrixPair p{SymMatrix{{t0, 2 * t0}, {2 * t0, 4 * t0}}, SymMatrix{{2 * t0, 3 * t0}, {3 * t0, 5 * t0}}};
    require_inside(p.a, dom, "two_by_two_pair");
    require_inside(p.b, dom, "two_by_two_pair");
    return p;
}

DenseMatrix helmert_basis(std::size_t k) {
    const std::size_t n = k + 1;
    DenseMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) v(i, j) = 1.0;
        v(j, j) = -static_cast<double>(j);
    }
    return v;
}

SymMatrix counterexample_ectrex(std::size_t k, double delta, double epsilon, const std::optional<DomainSpec>& dom) {
    if (k == 0) throw InvalidArgument("counterexample_ectrex: k must be positive");
    if (!(delta > 0.0) || !(epsilon > 0.0))
        throw InvalidArgument("counterexample_ectrex: delta and epsilon must be positive");
    const DenseMatrix v = helmert_basis(k);
    SymMatrix a = SymMatrix::generate(k + 1, [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t c = 1; c <= k; ++c) s += v(i, c) * v(j, c);
        return delta - epsilon * s;
    });
    require_inside(a, dom, "counterexample_ectrex");
    return a;
}

Inertia counterexample_ectrex_inertia(std::size_t k) { return {k, 0, 1}; }

SymMatrix m_matrix(std::size_t k, double a, double b) {
    if (!(a >= 0.0) || !(a < b) || !std::isfinite(b)) throw InvalidArgument("m_matrix: requires 0 <= a < b");
    return SymMatrix::generate(k + 1, [&](std::size_t i, std::size_t j) { return i == j ? a : b; });
}

Inertia m_matrix_inertia(std::size_t k, double a, double b) {
    if (!(a >= 0.0) || !(a < b)) throw InvalidArgument("m_matrix: requires 0 <= a < b");
    return {k, 0, 1};
}

SymMatrix psi_map(double a, double b, std::size_t k, double epsilon, const SymMatrix& B,
                  const linalg::TolerancePolicy& tol) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("psi_map: epsilon must be non-negative");
    if (!linalg::is_psd(B, tol)) throw InvalidArgument("psi_map: B must be positive semidefinite");
    return linalg::direct_sum({m_matrix(k, a, b), B}).shifted(epsilon);
}

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<std::vector<std::size_t>> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InvalidArgument("partition: no blocks");
    std::size_t total = 0;
    for (const auto& b : blocks_) {
        if (b.empty()) throw InvalidArgument("partition: empty block");
        total += b.size();
    }
    owner_.assign(total, total);
    for (std::size_t j = 0; j < blocks_.size(); ++j)
        for (std::size_t i : blocks_[j]) {
            if (i >= total) throw InvalidArgument("partition: index " + std::to_string(i + 1) + " out of range");
            if (owner_[i] != total)
                throw InvalidArgument("partition: index " + std::to_string(i + 1) + " appears twice");
            owner_[i] = j;
        }
}

Partition Partition::singletons(std::size_t n) {
    std::vector<std::vector<std::size_t>> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = {i};
    return Partition(std::move(b));
}

Partition Partition::tail(std::size_t n, std::size_t N) {
    if (n == 0 || N < n) throw InvalidArgument("partition tail: need 1 <= n <= N");
    std::vector<std::vector<std::size_t>> b(n);
    for (std::size_t i = 0; i + 1 < n; ++i) b[i] = {i};
    for (std::size_t i = n - 1; i < N; ++i) b[n - 1].push_back(i);
    return Partition(std::move(b));
}

Partition Partition::consecutive(std::span<const std::size_t> sizes) {
    std::vector<std::vector<std::size_t>> b;
    std::size_t next = 0;
    for (std::size_t s : sizes) {
        std::vector<std::size_t> blk;
        for (std::size_t c = 0; c < s; ++c) blk.push_back(next++);
        b.push_back(std::move(blk));
    }
    return Partition(std::move(b));
}

DenseMatrix weight_matrix(const Partition& pi) {
    DenseMatrix w(pi.size(), pi.block_count());
    for (std::size_t i = 0; i < pi.size(); ++i) w(i, pi.block_of(i)) = 1.0;
    return w;
}

SymMatrix inflate(const Partition& pi, const SymMatrix& a) {
    if (a.size() != pi.block_count())
        throw DimensionError("inflate: matrix size " + std::to_string(a.size()) + " differs from block count " +
                             std::to_string(pi.block_count()));
    return SymMatrix::generate(pi.size(), [&](std::size_t i, std::size_t j) { return a(pi.block_of(i), pi.block_of(j)); });
}

// ---------------------------------------------------------------- judicious

SymMatrix judicious_matrix() { return SymMatrix{{4, 2, 3}, {2, 1, 2}, {3, 2, 4}}; }

SymMatrix judicious_pencil(std::size_t k, double t) {
    if (k == 0) throw InvalidArgument("judicious_pencil: k must be positive");
    return linalg::direct_power(judicious_matrix(), k).shifted(t);
}

std::vector<double> judicious_pencil_eigenvalues(std::size_t k, double t) {
    if (k == 0) throw InvalidArgument("judicious_pencil: k must be positive");
    const double r17 = std::sqrt(17.0);
    std::vector<double> ev;
    for (std::size_t c = 0; c + 1 < k; ++c) {
        ev.push_back(4.0 - r17);
        ev.push_back(1.0);
        ev.push_back(4.0 + r17);
    }
    ev.push_back(1.0);
    const double tk = t * static_cast<double>(k);
    const double p = 8.0 + 3.0 * tk;
    const double q = tk - 1.0;
    const double disc = std::sqrt(p * p - 4.0 * q);
    const double big = p >= 0.0 ? 0.5 * (p + disc) : 0.5 * (p - disc);
    ev.push_back(big);
    ev.push_back(big != 0.0 ? q / big : 0.5 * (p - disc));
    std::sort(ev.begin(), ev.end());
    return ev;
}

Inertia judicious_pencil_inertia(std::size_t k, double t) {
    if (k == 0) throw InvalidArgument("judicious_pencil: k must be positive");
    const double tk = t * static_cast<double>(k);
    Inertia in{k - 1, 0, 2 * (k - 1) + 1};
    const double p = 8.0 + 3.0 * tk;
    // roots of x^2 - p x + (tk - 1): product tk - 1, sum p
    if (tk < 1.0) {
        in.n_neg += 1;
        in.n_pos += 1;
    } else if (tk == 1.0) {
        in.n_zero += 1;
        in.n_pos += p > 0.0 ? 1 : 0;
        in.n_neg += p < 0.0 ? 1 : 0;
    } else if (p > 0.0) {
        in.n_pos += 2;
    } else {
        in.n_neg += 2;
    }
    return in;
}

}  // namespace inertia_lab::constructions
