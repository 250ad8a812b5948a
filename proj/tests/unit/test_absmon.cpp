#include <gtest/gtest.h>

#include <cmath>

#include "inertia_lab/absmon.hpp"
#include "inertia_lab/errors.hpp"

using namespace inertia_lab;
using namespace inertia_lab::absmon;
using entrywise::FunctionSpec;
using entrywise::Series;

namespace {

double exp1(std::span<const double> x) { return std::exp(x[0]); }
double sin1(std::span<const double> x) { return std::sin(x[0]); }

}  // namespace

TEST(ForwardDifference, ExpPasses) {
    const auto r = forward_difference_test(exp1, GridSpec::unit_box(1, 4));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.worst_violation, 0.0);
    EXPECT_EQ(r.h, 1.0 / 64);
    EXPECT_GT(r.differences_checked, 0u);
    EXPECT_NE(r.label.find("not a proof"), std::string::npos);
}

TEST(ForwardDifference, SinFailsAtSecondOrder) {
    const auto r = forward_difference_test(sin1, GridSpec::unit_box(1, 6));
    EXPECT_FALSE(r.pass);
    EXPECT_LT(r.worst_violation, 0.0);
    ASSERT_EQ(r.alpha.size(), 1u);
    EXPECT_GE(r.alpha[0], 2u);
    ASSERT_EQ(r.location.size(), 1u);
    EXPECT_GT(r.location[0], 0.0);
    EXPECT_LT(r.location[0], 1.0);

    auto g = GridSpec::unit_box(1, 2);
    const auto r2 = forward_difference_test(sin1, g);
    EXPECT_FALSE(r2.pass);
    EXPECT_EQ(r2.alpha, (entrywise::MultiIndex{2}));
    // the reported difference is reproducible by hand
    const double x = r2.location[0], h = r2.h;
    EXPECT_NEAR(std::sin(x + 2 * h) - 2 * std::sin(x + h) + std::sin(x), r2.worst_violation, 1e-15);
}

TEST(ForwardDifference, ProductPassesOnSquare) {
    const auto r = forward_difference_test([](std::span<const double> x) { return x[0] * x[1]; }, GridSpec::unit_box(2));
    EXPECT_TRUE(r.pass);
}

TEST(ForwardDifference, NonnegativeSeriesPass) {
    const auto f = FunctionSpec::series(Series(2, {{{0, 0}, 1.0}, {{3, 1}, 2.0}, {{0, 4}, 0.5}, {{1, 1}, 0.1}}));
    EXPECT_TRUE(forward_difference_test(evaluable(f), GridSpec::unit_box(2, 5)).pass);
    auto g = GridSpec::unit_box(1);
    g.lower = {0.2};
    g.upper = {0.9};
    EXPECT_TRUE(forward_difference_test(evaluable(FunctionSpec::polynomial({0, 1, 0, 3, 1})), g).pass);
    EXPECT_FALSE(forward_difference_test(evaluable(FunctionSpec::polynomial({0, 1, -0.5})), g).pass);
}

TEST(ForwardDifference, BoundaryExtrapolation) {
    const auto r = forward_difference_test(exp1, GridSpec::unit_box(1, 3));
    EXPECT_NEAR(r.boundary_value, 1.0, 1e-3);
}

TEST(ForwardDifference, BadGrid) {
    GridSpec g = GridSpec::unit_box(1);
    g.upper = {0.0};
    EXPECT_THROW(forward_difference_test(exp1, g), InvalidArgument);
    g = GridSpec::unit_box(1);
    g.h = 2.0;
    EXPECT_THROW(forward_difference_test(exp1, g), InvalidArgument);
    EXPECT_THROW(forward_difference_test([](std::span<const double>) { return NAN; }, GridSpec::unit_box(1)),
                 InvalidArgument);
}

TEST(Maclaurin, RecoversPolynomials) {
    const Series s(2, {{{0, 0}, 0.5}, {{1, 0}, -2.0}, {{0, 2}, 3.0}, {{2, 1}, 1.25}, {{1, 3}, -0.75}});
    const auto est = maclaurin_estimate(evaluable(FunctionSpec::series(s)), 2, 4, 0.25);
    for (const auto& c : est.coefficients) {
        const double want = s.coefficient(c.alpha);
        EXPECT_LE(std::abs(c.value - want), 1e-6 * std::max(1.0, std::abs(want)));
    }
    const auto e1 = maclaurin_estimate(evaluable(FunctionSpec::polynomial({1, 2, 3, 4})), 1, 3, 0.25);
    ASSERT_EQ(e1.coefficients.size(), 4u);
    EXPECT_NEAR(e1.coefficients[3].value, 4.0, 1e-6);
}

TEST(Maclaurin, ExpCoefficients) {
    const auto est = maclaurin_estimate(exp1, 1, 4, 2e-3);
    double fact = 1.0;
    for (std::size_t n = 0; n < est.coefficients.size(); ++n) {
        if (n > 0) fact *= static_cast<double>(n);
        EXPECT_NEAR(est.coefficients[n].value, 1.0 / fact, 1e-3);
    }
}
