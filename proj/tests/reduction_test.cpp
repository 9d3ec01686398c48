#include <gtest/gtest.h>

#include <random>

#include "itype/acceptance.hpp"
#include "itype/reduction.hpp"

namespace itype {
namespace {

Term T(const char* s) { return parse_term(s); }

TEST(Reduction, FindsRedexesInLeftmostOutermostOrder) {
    auto rs = find_redexes(T("(\\x.x) ((\\y.y) z)"));
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_TRUE(rs[0].path.empty());
    EXPECT_EQ(rs[0].kind, RedexKind::i_redex);
    EXPECT_EQ(rs[1].path, (TermPath{PathStep::argument}));
    EXPECT_EQ(find_redexes(T("(\\y.x) z"))[0].kind, RedexKind::k_redex);
    EXPECT_EQ(leftmost_outermost_redex(T("x y")), std::nullopt);
}

TEST(Reduction, NormalAndHeadNormalForms) {
    EXPECT_TRUE(is_normal_form(T("\\x.x y")));
    EXPECT_FALSE(is_normal_form(T("x ((\\y.y) z)")));
    EXPECT_TRUE(is_head_normal_form(T("x ((\\y.y) z)")));
    EXPECT_FALSE(is_head_normal_form(T("(\\y.y) z")));
}

TEST(Reduction, ReduceToNormalFormExamples) {
    auto r = reduce_to_nf(T("(\\x.x) y"), 10);
    EXPECT_TRUE(r.reached);
    EXPECT_EQ(r.steps, 1u);
    EXPECT_TRUE(alpha_equivalent(r.term, T("y")));

    EXPECT_FALSE(reduce_to_nf(T("(\\z.z z)(\\z.z z)"), 100).reached);

    auto r2 = reduce_to_nf(T("(\\x.x x)(\\y.y)"), 10);
    EXPECT_TRUE(r2.reached);
    EXPECT_EQ(r2.steps, 2u);
    EXPECT_TRUE(alpha_equivalent(r2.term, T("\\y.y")));
}

TEST(Reduction, FInfinityReducesInsideNonNormalKArguments) {
    // The K-redex is kept and its argument stepped first.
    Term t = T("(\\y.x) ((\\z.z) w)");
    Term s = f_infinity_step(t);
    EXPECT_TRUE(alpha_equivalent(s, T("(\\y.x) w")));
    EXPECT_TRUE(alpha_equivalent(f_infinity_step(s), T("x")));
    // Leftmost-outermost drops the argument at once.
    EXPECT_TRUE(alpha_equivalent(leftmost_outermost_step(t), T("x")));
    // On Ω inside a K-redex F∞ loops, LO terminates.
    Term k_omega = T("(\\y.x) ((\\z.z z)(\\z.z z))");
    EXPECT_FALSE(reduce_to_nf(k_omega, 50, Strategy::f_infinity).reached);
    EXPECT_TRUE(reduce_to_nf(k_omega, 50, Strategy::leftmost_outermost).reached);
}

TEST(Reduction, FInfinityIsIdentityExactlyOnNormalForms) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        Term t = make_hygienic(acceptance::random_term(1 + i % 12, rng));
        EXPECT_EQ(identical(f_infinity_step(t), t), is_normal_form(t)) << to_string(t);
    }
}

TEST(Reduction, StepsPreserveHygiene) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Term t = make_hygienic(acceptance::random_term(3 + i % 10, rng));
        for (const Term& n : one_step_reducts(t)) EXPECT_TRUE(is_hygienic(n)) << to_string(t) << " -> " << to_string(n);
    }
}

TEST(Reduction, FirstRedexIsTheOneFInfinityConsiders) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Term t = make_hygienic(acceptance::random_term(3 + i % 10, rng));
        auto rs = find_redexes(t);
        if (rs.empty()) continue;
        EXPECT_EQ(leftmost_outermost_redex(t), rs.front());
        EXPECT_TRUE(alpha_equivalent(leftmost_outermost_step(t), beta_step(t, rs.front())));
    }
}

TEST(Reduction, InvalidPathThrows) {
    EXPECT_THROW(beta_step(T("x y"), RedexOccurrence{{}, RedexKind::i_redex}), InvalidPath);
    EXPECT_THROW(subterm_at(T("x"), TermPath{PathStep::body}), InvalidPath);
}

TEST(Oracle, Examples) {
    EXPECT_EQ(is_strongly_normalizing_oracle(T("\\x.x"), 100), SnVerdict::strongly_normalizing);
    EXPECT_EQ(is_strongly_normalizing_oracle(T("(\\z.z z)(\\z.z z)"), 100), SnVerdict::not_strongly_normalizing);
    EXPECT_EQ(is_strongly_normalizing_oracle(T("(\\y.x)((\\z.z z)(\\z.z z))"), 100),
              SnVerdict::not_strongly_normalizing);
    EXPECT_EQ(is_strongly_normalizing_oracle(T("(\\x.x x x)(\\x.x x x)"), 200), SnVerdict::budget_exceeded);
    EXPECT_THROW(is_strongly_normalizing_oracle(T("x"), 0), std::invalid_argument);
}

TEST(Oracle, SnTermsReachTheSameNormalFormUnderBothStrategies) {
    auto corpus = acceptance::build_corpus({.random_terms = 120});
    std::size_t checked = 0;
    for (const auto& c : corpus) {
        if (c.verdict != SnVerdict::strongly_normalizing) continue;
        auto a = reduce_to_nf(c.term, 10000, Strategy::f_infinity);
        auto b = reduce_to_nf(c.term, 10000, Strategy::leftmost_outermost);
        ASSERT_TRUE(a.reached && b.reached) << c.label;
        EXPECT_TRUE(alpha_equivalent(a.term, b.term)) << c.label;
        ++checked;
    }
    EXPECT_GT(checked, 100u);
}

}  // namespace
}  // namespace itype
