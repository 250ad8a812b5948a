#include <gtest/gtest.h>

#include "inertia_lab/entrywise.hpp"
#include "inertia_lab/errors.hpp"

using namespace inertia_lab;
using namespace inertia_lab::entrywise;

namespace {

const DomainSpec kTwo = DomainSpec::two_sided(1.0);
const DomainSpec kOpen = DomainSpec::open_positive(1.0);

FunctionSpec poly(std::vector<double> c) { return FunctionSpec::polynomial(std::move(c)); }

FunctionSpec series(std::size_t m, std::vector<Term> t) { return FunctionSpec::series(Series(m, std::move(t))); }

}  // namespace

TEST(Classify, SpecExamples) {
    auto v = classify_for(Theorem::class_preserver, FunctionSpec::homothety(3.0), AdmissibleK({2}), 2, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.clause, Clause::positive_homothety);
    EXPECT_EQ(v.theorem, Theorem::class_preserver);

    v = classify_for(Theorem::class_preserver, FunctionSpec::constant(-5.0), AdmissibleK({1}), 1, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.clause, Clause::negative_constant);

    v = classify(FunctionSpec::affine(-1.0, 1.0), AdmissibleK({2}), 2, kTwo);
    EXPECT_FALSE(v.conforms);
    EXPECT_EQ(v.clause, Clause::negative_offset);
    EXPECT_EQ(v.theorem, Theorem::negativity_bound);
}

TEST(Classify, SingleVariableBound) {
    auto v = classify(FunctionSpec::affine(0.5, 2.0), AdmissibleK({2}), 2, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.clause, Clause::split_form);
    EXPECT_EQ(v.p0, std::optional<std::size_t>{0});
    EXPECT_EQ(v.c, 2.0);
    EXPECT_EQ(v.offset, 0.5);

    // l > k_p0 allows a negative offset
    v = classify(FunctionSpec::affine(-1.0, 1.0), AdmissibleK({3}), 4, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.offset, -1.0);
    v = classify(poly({0, 0, 1}), AdmissibleK({2}), 2, kTwo);
    EXPECT_EQ(v.clause, Clause::constrained_degree);
    v = classify(poly({0, -1}), AdmissibleK({1}), 1, kTwo);
    EXPECT_EQ(v.clause, Clause::negative_coefficient);
    v = classify(FunctionSpec::constant(-3.0), AdmissibleK({2}), 2, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.clause, Clause::constant_map);
}

TEST(Classify, InsufficientCodomain) {
    // k_p0 = 3 > l = 2, reachable with K = 2 elsewhere
    const auto f = series(2, {{{0, 1}, 1.0}});
    const auto v = classify(f, AdmissibleK({2, 3}), 2, kTwo);
    EXPECT_FALSE(v.conforms);
    EXPECT_EQ(v.clause, Clause::insufficient_codomain);
    EXPECT_EQ(v.violations.front().var, std::optional<std::size_t>{1});
}

TEST(Classify, MultivariateClauses) {
    const AdmissibleK k({0, 1, 1});
    auto v = classify(series(3, {{{1, 0, 0}, 1.0}, {{0, 1, 0}, 2.0}}), k, 1, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.theorem, Theorem::multivariate_bound);
    EXPECT_EQ(v.p0, std::optional<std::size_t>{1});

    v = classify(series(3, {{{0, 1, 0}, 1.0}, {{0, 0, 1}, 1.0}}), k, 1, kTwo);
    EXPECT_EQ(v.clause, Clause::multiple_linear_variables);
    v = classify(series(3, {{{0, 1, 1}, 1.0}}), k, 1, kTwo);
    EXPECT_EQ(v.clause, Clause::constrained_cross_term);
    v = classify(series(3, {{{1, 1, 0}, 1.0}}), k, 1, kTwo);
    EXPECT_EQ(v.clause, Clause::mixed_linear_term);
    v = classify(series(3, {{{0, 2, 0}, 1.0}}), k, 1, kTwo);
    EXPECT_EQ(v.clause, Clause::constrained_degree);
    v = classify(series(3, {{{2, 0, 0}, -1.0}, {{0, 2, 0}, 1.0}}), k, 1, kTwo);
    ASSERT_EQ(v.violations.size(), 2u);
    EXPECT_EQ(v.violations[0].clause, Clause::negative_coefficient);
    EXPECT_EQ(v.violations[0].var, std::optional<std::size_t>{0});
    EXPECT_EQ(v.violations[1].clause, Clause::constrained_degree);
}

TEST(Classify, PsdCodomain) {
    // k = (0, 1), l = 0: f must ignore x2
    auto v = classify(series(2, {{{0, 1}, 1.0}}), AdmissibleK({0, 1}), 0, kTwo);
    EXPECT_EQ(v.theorem, Theorem::psd_codomain);
    EXPECT_EQ(v.clause, Clause::constrained_dependence);
    EXPECT_EQ(v.violations.front().var, std::optional<std::size_t>{1});
    v = classify(series(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{3, 0}, 1.0 / 6}}), AdmissibleK({0, 1}), 0, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.clause, Clause::nonnegative_series);
    v = classify(series(2, {{{0, 0}, -1.0}}), AdmissibleK({0, 1}), 0, kTwo);
    EXPECT_EQ(v.clause, Clause::negative_constant_term);

    // k = 0 with l > 0 tolerates a negative constant
    v = classify(poly({-1, 1}), AdmissibleK({0}), 1, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.theorem, Theorem::negativity_bound);
    v = classify(poly({-1, 1}), AdmissibleK({0}), 0, kOpen);
    EXPECT_EQ(v.clause, Clause::negative_constant_term);
    EXPECT_EQ(v.theorem, Theorem::psd_codomain);
}

TEST(Classify, RegimeNotCovered) {
    EXPECT_THROW(classify(poly({0, 1}), AdmissibleK({2}), 3, kTwo), RegimeError);
    EXPECT_THROW(classify(poly({0, 1}), AdmissibleK({1}), 2, kTwo), RegimeError);
    EXPECT_THROW(classify(series(2, {{{0, 1}, 1.0}}), AdmissibleK({1, 3}), 2, kTwo), RegimeError);
    EXPECT_NO_THROW(classify(poly({0, 1}), AdmissibleK({3}), 4, kTwo));
    EXPECT_NO_THROW(classify(poly({0, 1}), AdmissibleK({5}), 0, kTwo));
    EXPECT_THROW(classify(poly({0, 1}), AdmissibleK({1, 1}), 1, kTwo), DimensionError);
}

TEST(Classify, ArgumentOrderStable) {
    // F(x1) + c x3 with k = (0, 2, 2) against the same map with x2 and x3 swapped
    const auto f = FunctionSpec::split(Series(1, {{{0}, 0.2}, {{2}, 1.0}}), 1.5, 2, 3);
    const auto g = series(3, {{{0, 0, 0}, 0.2}, {{2, 0, 0}, 1.0}, {{0, 1, 0}, 1.5}});
    const auto vf = classify(f, AdmissibleK({0, 2, 2}), 2, kTwo);
    const auto vg = classify(g, AdmissibleK({0, 2, 2}), 2, kTwo);
    EXPECT_TRUE(vf.conforms);
    EXPECT_TRUE(vg.conforms);
    EXPECT_EQ(vf.p0, std::optional<std::size_t>{2});
    EXPECT_EQ(vg.p0, std::optional<std::size_t>{1});
    EXPECT_EQ(vf.clause, vg.clause);
}

TEST(ClassifyFor, InertiaPreserver) {
    const AdmissibleK k({2});
    EXPECT_TRUE(classify_for(Theorem::inertia_preserver, FunctionSpec::homothety(2.0), k, 2, kTwo).conforms);
    EXPECT_EQ(classify_for(Theorem::inertia_preserver, poly({1, 1}), k, 2, kTwo).clause, Clause::not_homothety);
    EXPECT_EQ(classify_for(Theorem::inertia_preserver, FunctionSpec::constant(-1.0), k, 2, kTwo).clause,
              Clause::forbidden_constant);
    EXPECT_EQ(classify_for(Theorem::inertia_preserver, poly({0, 1, 1}), k, 2, kTwo).clause, Clause::not_homothety);
}

TEST(ClassifyFor, ClassAndClosure) {
    const AdmissibleK k({2});
    auto v = classify_for(Theorem::closure_preserver, FunctionSpec::affine(1.0, 1.0), k, 2, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.clause, Clause::affine_nonnegative_offset);
    v = classify_for(Theorem::class_preserver, FunctionSpec::affine(1.0, 1.0), k, 2, kTwo);
    EXPECT_EQ(v.clause, Clause::positive_offset);
    v = classify_for(Theorem::class_preserver, FunctionSpec::constant(-1.0), k, 2, kTwo);
    EXPECT_EQ(v.clause, Clause::forbidden_constant);
    v = classify_for(Theorem::closure_preserver, FunctionSpec::constant(-1.0), k, 2, kTwo);
    EXPECT_TRUE(v.conforms);
    v = classify_for(Theorem::pontryagin, FunctionSpec::homothety(0.5), k, 2, kTwo);
    EXPECT_TRUE(v.conforms);
    EXPECT_EQ(v.theorem, Theorem::pontryagin);
    EXPECT_THROW(classify_for(Theorem::class_preserver, poly({0, 1}), AdmissibleK({0}), 0, kTwo), InvalidArgument);
}

TEST(Names, RoundTrip) {
    for (auto t : {Theorem::negativity_bound, Theorem::multivariate_bound, Theorem::psd_codomain,
                   Theorem::class_preserver, Theorem::closure_preserver, Theorem::inertia_preserver,
                   Theorem::pontryagin, Theorem::pontryagin_closure})
        EXPECT_EQ(theorem_from_string(to_string(t)), t);
    for (int c = 0; c <= static_cast<int>(Clause::not_homothety); ++c)
        EXPECT_EQ(static_cast<int>(clause_from_string(to_string(static_cast<Clause>(c)))), c);
    EXPECT_THROW(theorem_from_string("nope"), InvalidArgument);
}
