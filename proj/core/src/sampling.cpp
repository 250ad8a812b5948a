#include <algorithm>
#include <cmath>

#include "inertia_lab/constructions.hpp"
#include "inertia_lab/errors.hpp"
#include "inertia_lab/harness.hpp"

namespace inertia_lab::harness {

namespace {

constexpr int kMaxAttempts = 100;

linalg::DenseMatrix random_orthogonal(std::size_t n, Rng& rng) {
    linalg::DenseMatrix q(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (;;) {
            std::vector<double> v(n);
            for (double& x : v) x = rng.normal();
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t p = 0; p < c; ++p) {
                    double d = 0.0;
                    for (std::size_t i = 0; i < n; ++i) d += v[i] * q(i, p);
                    for (std::size_t i = 0; i < n; ++i) v[i] -= d * q(i, p);
                }
            double norm = 0.0;
            for (double x : v) norm += x * x;
            norm = std::sqrt(norm);
            if (norm < 1e-8) continue;
            for (std::size_t i = 0; i < n; ++i) q(i, c) = v[i] / norm;
            break;
        }
    }
    return q;
}

SymMatrix sample_two_sided(std::size_t n, std::size_t k, const DomainSpec& dom, Rng& rng) {
    const auto q = random_orthogonal(n, rng);
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = rng.uniform(0.2, 1.0);
        lambda[i] = i < k ? -mag : mag;
    }
    SymMatrix a = SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += q(i, c) * lambda[c] * q(j, c);
        return s;
    });
    const double target = dom.effective_rho() * rng.uniform(0.3, 0.95);
    return a.scaled(target / a.max_abs());
}

SymMatrix sample_one_sided(std::size_t n, std::size_t k, const DomainSpec& dom, Rng& rng) {
    const std::size_t lo = k + 1;
    const std::size_t base = rng.between(std::min(lo, n), n);

    const double a = k == 0 ? rng.uniform(0.2, 1.0) : rng.uniform(0.05, 0.5);
    const double b = a + rng.uniform(0.2, 1.0);
    const double eps = rng.uniform(0.01, 0.2);
    SymMatrix psi = [&] {
        const std::size_t rb = base - (k + 1);
        if (rb == 0) return constructions::m_matrix(k, a, b).shifted(eps);
        std::vector<double> x(rb * rb);
        for (double& v : x) v = rng.uniform(0.05, 1.0);
        SymMatrix B = SymMatrix::generate(rb, [&](std::size_t i, std::size_t j) {
            double s = 0.0;
            for (std::size_t c = 0; c < rb; ++c) s += x[i * rb + c] * x[j * rb + c];
            return s / static_cast<double>(rb);
        });
        return linalg::direct_sum({constructions::m_matrix(k, a, b), B}).shifted(eps);
    }();

    std::vector<std::size_t> owner(n);
    for (std::size_t i = 0; i < n; ++i) owner[i] = i < base ? i : rng.below(base);
    rng.shuffle(owner);
    std::vector<std::vector<std::size_t>> blocks(base);
    for (std::size_t i = 0; i < n; ++i) blocks[owner[i]].push_back(i);
    SymMatrix up = constructions::inflate(constructions::Partition(std::move(blocks)), psi);

    // Small PSD perturbation with positive entries breaks the block structure.
    const double eta = 1e-3 * rng.uniform(0.1, 1.0) * std::abs(a - b);
    std::vector<double> y(n * n);
    for (double& v : y) v = rng.uniform(0.0, 1.0);
    SymMatrix e = SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += y[i * n + c] * y[j * n + c];
        return s / static_cast<double>(n);
    });
    SymMatrix out = up + e.scaled(eta);
    const double target = dom.effective_rho() * rng.uniform(0.3, 0.95);
    return out.scaled(target / out.max_abs());
}

bool inside(const SymMatrix& a, const DomainSpec& dom) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j)
            if (!dom.contains(a(i, j))) return false;
    return true;
}

}  // namespace

std::size_t min_sample_size(std::size_t k, const DomainSpec& dom) {
    if (dom.one_sided()) return k + 1;
    return std::max<std::size_t>(1, k);
}

SymMatrix sample_with_inertia(std::size_t n, std::size_t k, const DomainSpec& dom, Rng& rng,
                              const linalg::TolerancePolicy& tol) {
    dom.validate();
    if (n == 0) throw DimensionError("sample_with_inertia: n must be positive");
    if (k > n) throw InvalidArgument("sample_with_inertia: k exceeds n");
    if (n < min_sample_size(k, dom))
        throw SamplingError("sample_with_inertia: entries in " + dom.describe() + " force n >= " +
                            std::to_string(min_sample_size(k, dom)) + " for k = " + std::to_string(k) +
                            " (got n = " + std::to_string(n) + ")");
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        SymMatrix a = dom.one_sided() ? sample_one_sided(n, k, dom, rng) : sample_two_sided(n, k, dom, rng);
        if (!inside(a, dom)) continue;
        if (linalg::inertia(a, tol).n_neg == k) return a;
    }
    throw SamplingError("sample_with_inertia: no sample with " + std::to_string(k) + " negative eigenvalues in " +
                        dom.describe() + " after " + std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace inertia_lab::harness
