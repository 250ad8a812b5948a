#include "inertia_lab/pontryagin.hpp"

#include <algorithm>
#include <cmath>

#include "inertia_lab/constructions.hpp"
#include "inertia_lab/errors.hpp"

namespace inertia_lab::pontryagin {

DenseMatrix Signature::involution() const {
    DenseMatrix j(dimension(), dimension());
    for (std::size_t i = 0; i < dimension(); ++i) j(i, i) = i < d_plus ? 1.0 : -1.0;
    return j;
}

SymMatrix gram_of(const DenseMatrix& vectors, const Signature& sig) {
    if (vectors.cols() != sig.dimension())
        throw DimensionError("gram_of: vectors have " + std::to_string(vectors.cols()) +
                             " coordinates but the signature has dimension " + std::to_string(sig.dimension()));
    if (vectors.rows() == 0) throw DimensionError("gram_of: no vectors");
    return SymMatrix::generate(vectors.rows(), [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t c = 0; c < sig.dimension(); ++c) {
            const double prod = vectors(i, c) * vectors(j, c);
            s += c < sig.d_plus ? prod : -prod;
        }
        return s;
    });
}

GramRealization gram_realize(const SymMatrix& a, std::size_t k, const linalg::TolerancePolicy& tol) {
    const auto eig = linalg::eig_sym(a, tol);
    const double zt = linalg::zero_threshold(a, tol);
    const std::size_t n = a.size();

    std::vector<std::size_t> neg, nonneg;
    for (std::size_t j = 0; j < n; ++j) {
        const double l = eig.values[j];
        if (l < -zt) neg.push_back(j);
        else nonneg.push_back(j);
    }
    const std::size_t r = neg.size();
    if (r > k)
        throw InvalidArgument("gram_realize: matrix has " + std::to_string(r) +
                              " negative eigenvalues, more than the requested index " + std::to_string(k));

    GramRealization g;
    g.signature = {n - r, k};
    g.vectors = DenseMatrix(n, g.signature.dimension());
    for (std::size_t c = 0; c < nonneg.size(); ++c) {
        const double s = std::sqrt(std::max(0.0, eig.values[nonneg[c]]));
        for (std::size_t i = 0; i < n; ++i) g.vectors(i, c) = s * eig.vectors(i, nonneg[c]);
    }
    for (std::size_t c = 0; c < r; ++c) {
        const double s = std::sqrt(-eig.values[neg[c]]);
        for (std::size_t i = 0; i < n; ++i) g.vectors(i, g.signature.d_plus + c) = s * eig.vectors(i, neg[c]);
    }

    const SymMatrix back = gram_of(g.vectors, g.signature);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.reconstruction_error = std::max(g.reconstruction_error, std::abs(back(i, j) - a(i, j)));
    return g;
}

std::vector<std::size_t> leading_negativity_profile(const SymMatrix& a, const linalg::TolerancePolicy& tol) {
    std::vector<std::size_t> out;
    out.reserve(a.size());
    for (std::size_t m = 1; m <= a.size(); ++m) out.push_back(linalg::inertia(a.leading(m), tol).n_neg);
    return out;
}

std::optional<std::size_t> stabilization_index(std::span<const std::size_t> profile, std::size_t k) {
    if (profile.empty()) throw InvalidArgument("stabilization_index: empty profile");
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i] > k)
            throw InvalidArgument("stabilization_index: entry " + std::to_string(i + 1) + " = " +
                                  std::to_string(profile[i]) + " exceeds k = " + std::to_string(k));
        if (i > 0 && profile[i] < profile[i - 1])
            throw InvalidArgument("stabilization_index: profile decreases at entry " + std::to_string(i + 1));
    }
    const std::size_t last = profile.back();
    std::size_t first = profile.size() - 1;
    while (first > 0 && profile[first - 1] == last) --first;
    if (last < k && first == profile.size() - 1 && profile.size() > 1) return std::nullopt;
    return first + 1;
}

SymMatrix lift_finite(const SymMatrix& a, std::size_t N) {
    if (N < a.size())
        throw InvalidArgument("lift_finite: N = " + std::to_string(N) + " is smaller than n = " + std::to_string(a.size()));
    return constructions::inflate(constructions::Partition::tail(a.size(), N), a);
}

}  // namespace inertia_lab::pontryagin
