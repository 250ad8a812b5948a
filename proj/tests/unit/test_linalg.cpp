#include <gtest/gtest.h>

#include <cmath>

#include "inertia_lab/errors.hpp"
#include "inertia_lab/linalg.hpp"
#include "util.hpp"

using namespace inertia_lab;
using linalg::Inertia;
using linalg::SymMatrix;

TEST(SymMatrix, AveragesAsymmetricInput) {
    const std::vector<double> full{1, 2, 4, 3};
    const SymMatrix a(2, full);
    EXPECT_DOUBLE_EQ(a(0, 1), 3.0);
    EXPECT_DOUBLE_EQ(a(1, 0), 3.0);
}

TEST(SymMatrix, RejectsBadInput) {
    EXPECT_THROW(SymMatrix(0, std::vector<double>{}), DimensionError);
    EXPECT_THROW(SymMatrix(2, std::vector<double>{1, 2, 3}), DimensionError);
    EXPECT_THROW(SymMatrix(1, std::vector<double>{NAN}), InvalidArgument);
    EXPECT_THROW(SymMatrix::from_rows({{1, 2}, {3}}), DimensionError);
}

TEST(SymMatrix, Factories) {
    EXPECT_EQ(SymMatrix::ones(3).trace(), 3.0);
    EXPECT_EQ(SymMatrix::identity(4).frobenius_norm(), 2.0);
    const SymMatrix d = SymMatrix::diagonal({1, -2, 3});
    EXPECT_EQ(d(1, 1), -2.0);
    EXPECT_EQ(d(0, 2), 0.0);
    const std::vector<double> u{1, 2};
    EXPECT_EQ(SymMatrix::outer(u), (SymMatrix{{1, 2}, {2, 4}}));
    EXPECT_EQ(SymMatrix::identity(2).shifted(1.0), (SymMatrix{{2, 1}, {1, 2}}));
}

TEST(SymMatrix, PrincipalAndLeading) {
    const SymMatrix a{{1, 2, 3}, {2, 4, 5}, {3, 5, 6}};
    EXPECT_EQ(a.leading(2), (SymMatrix{{1, 2}, {2, 4}}));
    const std::vector<std::size_t> idx{0, 2};
    EXPECT_EQ(a.principal(idx), (SymMatrix{{1, 3}, {3, 6}}));
}

TEST(Eig, JudiciousMatrix) {
    const SymMatrix a{{4, 2, 3}, {2, 1, 2}, {3, 2, 4}};
    const auto v = linalg::eigenvalues(a);
    const double s = std::sqrt(17.0);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_NEAR(v[0], 4 - s, 1e-12);
    EXPECT_NEAR(v[1], 1.0, 1e-12);
    EXPECT_NEAR(v[2], 4 + s, 1e-12);
    EXPECT_EQ(linalg::inertia(a), (Inertia{1, 0, 2}));
}

TEST(Eig, SimpleCases) {
    const auto v = linalg::eigenvalues(SymMatrix{{2, 1}, {1, 2}});
    EXPECT_NEAR(v[0], 1.0, 1e-14);
    EXPECT_NEAR(v[1], 3.0, 1e-14);
    EXPECT_EQ(linalg::inertia(SymMatrix::zeros(2)), (Inertia{0, 2, 0}));
    EXPECT_EQ(linalg::inertia(SymMatrix{{0, 1}, {1, 0}}), (Inertia{1, 0, 1}));
    EXPECT_EQ(linalg::inertia(SymMatrix{{-3.0}}), (Inertia{1, 0, 0}));
}

TEST(Eig, ReconstructionAndOrthogonality) {
    Rng rng(11, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(10);
        const SymMatrix a = testutil::random_sym(n, rng);
        const auto e = linalg::eig_sym(a);
        for (std::size_t i = 1; i < n; ++i) EXPECT_LE(e.values[i - 1], e.values[i]);
        const SymMatrix back = SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
            double s = 0.0;
            for (std::size_t c = 0; c < n; ++c) s += e.vectors(i, c) * e.values[c] * e.vectors(j, c);
            return s;
        });
        EXPECT_LE(testutil::max_abs_diff(a, back), 1e-12 * std::max(1.0, a.frobenius_norm()));
        const auto qtq = e.vectors.transpose() * e.vectors;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(qtq(i, j), i == j ? 1.0 : 0.0, 1e-12);
        for (std::size_t c = 0; c < n; ++c) {
            double best = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(e.vectors(i, c)) > std::abs(best)) best = e.vectors(i, c);
            EXPECT_GT(best, 0.0);
        }
    }
}

TEST(Eig, AgreesWithSturmOracle) {
    Rng rng(12, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(9);
        const std::size_t r = rng.below(n + 1);
        // rank-deficient indefinite input
        const SymMatrix a = testutil::random_gram(n, r, rng) - testutil::random_gram(n, rng.below(n + 1 - r), rng);
        const auto got = linalg::inertia(a);
        const auto ref = testutil::counts(a);
        EXPECT_EQ(got.n_neg, ref.neg);
        EXPECT_EQ(got.n_zero, ref.zero);
        EXPECT_EQ(got.n_pos, ref.pos);
    }
}

TEST(Inertia, SylvesterCongruence) {
    Rng rng(13, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(6);
        const SymMatrix a = testutil::random_sym(n, rng);
        linalg::DenseMatrix q(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q(i, j) = (i == j ? 2.0 : 0.0) + rng.uniform(-0.3, 0.3);
        EXPECT_EQ(linalg::inertia(linalg::congruence(a, q)), linalg::inertia(a));
    }
}

TEST(Inertia, ToleranceBand) {
    linalg::TolerancePolicy tol;
    EXPECT_EQ(linalg::inertia(SymMatrix::diagonal({1e-12, -1e-12, 1.0}), tol), (Inertia{0, 2, 1}));
    tol.rel_zero = 1e-14;
    EXPECT_EQ(linalg::inertia(SymMatrix::diagonal({1e-12, -1e-12, 1.0}), tol), (Inertia{1, 0, 2}));
    tol.rel_zero = 0.5;
    EXPECT_THROW(tol.validate(), InvalidArgument);
    tol.rel_zero = 0.0;
    EXPECT_THROW(tol.validate(), InvalidArgument);
}

TEST(Inertia, Membership) {
    const SymMatrix j{{4, 2, 3}, {2, 1, 2}, {3, 2, 4}};
    EXPECT_TRUE(linalg::is_member(j, 1, false));
    EXPECT_FALSE(linalg::is_member(j, 0, false));
    EXPECT_TRUE(linalg::is_member(j, 2, true));
    EXPECT_FALSE(linalg::is_member(j, 2, false));
    EXPECT_TRUE(linalg::is_psd(SymMatrix::ones(3)));
    EXPECT_TRUE(linalg::loewner_geq(SymMatrix::identity(2).scaled(2), SymMatrix::identity(2)));
    EXPECT_FALSE(linalg::loewner_geq(SymMatrix::identity(2), SymMatrix::ones(2).scaled(2)));
}

TEST(Products, SchurAndHadamardPowers) {
    const SymMatrix a{{1, 2}, {2, 3}};
    const SymMatrix b{{0, -1}, {-1, 2}};
    EXPECT_EQ(linalg::schur_product(a, b), (SymMatrix{{0, -2}, {-2, 6}}));
    const std::vector<SymMatrix> tup{a, b};
    const std::vector<unsigned> alpha{2, 0};
    EXPECT_EQ(linalg::hadamard_power(tup, alpha), (SymMatrix{{1, 4}, {4, 9}}));
    const std::vector<unsigned> zero{0, 0};
    EXPECT_EQ(linalg::hadamard_power(tup, zero), SymMatrix::ones(2));
    EXPECT_THROW(linalg::schur_product(a, SymMatrix::ones(3)), DimensionError);
}

TEST(Products, SchurOfPsdIsPsd) {
    Rng rng(14, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        const SymMatrix a = testutil::random_gram(n, 1 + rng.below(n), rng);
        const SymMatrix b = testutil::random_gram(n, 1 + rng.below(n), rng);
        EXPECT_EQ(testutil::counts(linalg::schur_product(a, b)).neg, 0u);
    }
}

TEST(DirectSum, InertiaAdds) {
    const SymMatrix a{{0, 1}, {1, 0}};
    const SymMatrix b = SymMatrix::diagonal({-1, 0, 2});
    const SymMatrix s = linalg::direct_sum({a, b});
    EXPECT_EQ(s.size(), 5u);
    EXPECT_EQ(s(2, 2), -1.0);
    EXPECT_EQ(s(0, 3), 0.0);
    EXPECT_EQ(linalg::inertia(s), linalg::inertia(a) + linalg::inertia(b));
    EXPECT_EQ(linalg::direct_power(a, 3).size(), 6u);
    EXPECT_EQ(linalg::inertia(linalg::direct_power(a, 3)), (Inertia{3, 0, 3}));
}

TEST(Rank, MatchesOracle) {
    Rng rng(15, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        const std::size_t r = rng.below(n + 1);
        const SymMatrix a = testutil::random_gram(n, r, rng);
        EXPECT_EQ(linalg::rank(a), oracle::rank(testutil::dense(a)));
    }
}

TEST(IntPow, Conventions) {
    EXPECT_EQ(linalg::int_pow(0.0, 0), 1.0);
    EXPECT_EQ(linalg::int_pow(-2.0, 3), -8.0);
    EXPECT_EQ(linalg::int_pow(0.5, 2), 0.25);
}
