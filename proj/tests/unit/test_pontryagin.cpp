#include <gtest/gtest.h>

#include "inertia_lab/constructions.hpp"
#include "inertia_lab/entrywise.hpp"
#include "inertia_lab/errors.hpp"
#include "inertia_lab/pontryagin.hpp"
#include "util.hpp"

using namespace inertia_lab;
using namespace inertia_lab::pontryagin;

TEST(Gram, FactorDiagExample) {
    const auto g = gram_realize(SymMatrix::diagonal({1, -1}), 1);
    EXPECT_EQ(g.signature, (Signature{1, 1}));
    EXPECT_EQ(g.vectors(0, 0), 1.0);
    EXPECT_EQ(g.vectors(0, 1), 0.0);
    EXPECT_EQ(g.vectors(1, 0), 0.0);
    EXPECT_EQ(g.vectors(1, 1), 1.0);
    EXPECT_EQ(g.reconstruction_error, 0.0);
}

TEST(Gram, Judicious) {
    const auto g = gram_realize(constructions::judicious_matrix(), 1);
    EXPECT_LE(g.reconstruction_error, 1e-8);
    EXPECT_EQ(g.signature.d_minus, 1u);
}

TEST(Gram, RoundTrip) {
    Rng rng(41, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(10);
        const std::size_t k = rng.below(5);
        const std::size_t r = std::min<std::size_t>(k, rng.below(n + 1));
        const SymMatrix a = testutil::random_gram(n, n - r, rng) - testutil::random_gram(n, r, rng);
        const auto g = gram_realize(a, k);
        EXPECT_EQ(g.signature.d_minus, k);
        const SymMatrix back = gram_of(g.vectors, g.signature);
        EXPECT_LE((back - a).max_abs(), 1e-8 * std::max(1.0, a.max_abs()));
    }
}

TEST(Gram, RejectsTooManyNegatives) {
    EXPECT_THROW(gram_realize(SymMatrix::diagonal({-1, -1, 1}), 1), InvalidArgument);
}

TEST(Gram, EuclideanCaseIsPsd) {
    Rng rng(42, 0);
    linalg::DenseMatrix v(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) v(i, j) = rng.uniform(-1, 1);
    EXPECT_EQ(testutil::counts(gram_of(v, Signature{3, 0})).neg, 0u);
}

TEST(Profile, Examples) {
    EXPECT_EQ(leading_negativity_profile(constructions::judicious_matrix()), (std::vector<std::size_t>{0, 0, 1}));
    Rng rng(43, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const SymMatrix a = testutil::random_sym(1 + rng.below(10), rng);
        const auto p = leading_negativity_profile(a);
        for (std::size_t i = 1; i < p.size(); ++i) {
            EXPECT_GE(p[i], p[i - 1]);
            EXPECT_LE(p[i], p[i - 1] + 1);
        }
        EXPECT_EQ(p.back(), testutil::counts(a).neg);
    }
}

TEST(Stabilization, Rules) {
    const std::vector<std::size_t> a{0, 1, 1, 1};
    EXPECT_EQ(stabilization_index(a, 1), std::optional<std::size_t>{2});
    const std::vector<std::size_t> b{0, 0, 1};
    EXPECT_EQ(stabilization_index(b, 1), std::optional<std::size_t>{3});
    EXPECT_EQ(stabilization_index(b, 2), std::nullopt);
    const std::vector<std::size_t> c{0, 0, 0};
    EXPECT_EQ(stabilization_index(c, 2), std::optional<std::size_t>{1});
    const std::vector<std::size_t> bad{0, 1, 0};
    EXPECT_THROW(stabilization_index(bad, 2), InvalidArgument);
    const std::vector<std::size_t> big{0, 3};
    EXPECT_THROW(stabilization_index(big, 2), InvalidArgument);
}

TEST(Lift, ReplicatesLastRowAndColumn) {
    const SymMatrix a{{1, 2}, {2, 3}};
    const SymMatrix l = lift_finite(a, 4);
    EXPECT_EQ(l, (SymMatrix{{1, 2, 2, 2}, {2, 3, 3, 3}, {2, 3, 3, 3}, {2, 3, 3, 3}}));
    EXPECT_EQ(lift_finite(a, 2), a);
    EXPECT_THROW(lift_finite(a, 1), InvalidArgument);
}

TEST(Lift, TransferIdentity) {
    Rng rng(44, 0);
    const std::vector<entrywise::FunctionSpec> fs{
        entrywise::FunctionSpec::polynomial({0.3, -1, 0.5, 2}),
        entrywise::FunctionSpec::homothety(2.0),
        entrywise::FunctionSpec::constant(-1.0),
        entrywise::FunctionSpec::polynomial({0, 0, 1}),
    };
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(7);
        const SymMatrix a = testutil::random_sym(n, rng);
        for (const auto& f : fs) {
            const auto base = testutil::counts(entrywise::apply_entrywise(f, a, entrywise::DomainSpec::two_sided())).neg;
            for (std::size_t N : {n, n + 3, n + 7})
                EXPECT_EQ(testutil::counts(entrywise::apply_entrywise(f, lift_finite(a, N), entrywise::DomainSpec::two_sided())).neg,
                          base);
        }
    }
}
