#include <gtest/gtest.h>

#include <random>

#include "itype/acceptance.hpp"
#include "itype/unify.hpp"

namespace itype {
namespace {

struct Unify : ::testing::Test {
    NameInterner names;
    Unify() {
        for (char c = 'a'; c <= 'z'; ++c) names.intern(std::string(1, c));
    }
    EquationSet S(const char* s) { return parse_equations(s, names); }
    PreType P(const char* s) { return parse_pretype(s, names); }
    VarId v(const char* s) { return names.intern(s); }
};

TEST_F(Unify, ParsesAndRendersEquations) {
    EquationSet s = S("b = <a>->a; <a> = <c,e>\nd ≐ a");
    ASSERT_EQ(s.size(), 3u);
    EXPECT_TRUE(s[0].is_type());
    EXPECT_TRUE(s[1].is_list());
    EXPECT_TRUE(s[1].is_blocked());
    EXPECT_EQ(to_string(s), "b = <a>→a\n<a> = <c,e>\nd = a\n");
    EXPECT_THROW(S("a = <b>"), ParseError);
    EXPECT_THROW(S("a"), ParseError);
}

TEST_F(Unify, SetSemanticsKeepsFirstPosition) {
    EquationSet s = S("a = b; c = d; a = b");
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s, S("a = b; c = d"));
}

TEST_F(Unify, ClassifiesTheThreeForms) {
    FormReport solved = classify(S("b = <a>->a; c = a; d = a"));
    EXPECT_TRUE(solved.solved);
    EXPECT_FALSE(solved.unsolvable() || solved.is_blocked());

    FormReport blocked = classify(S("<a> = <c,e>"));
    EXPECT_FALSE(blocked.solved);
    EXPECT_EQ(blocked.blocked, (std::vector<std::size_t>{0}));

    FormReport circular = classify(S("a = <b>->a"));
    EXPECT_TRUE(circular.unsolvable());
    EXPECT_EQ(circular.circular, (std::vector<std::size_t>{0}));

    EXPECT_TRUE(classify(EquationSet{}).solved);
    EXPECT_FALSE(classify(S("a = b; a = c")).solved);
    EXPECT_FALSE(classify(S("a = b; b = c")).solved);
}

TEST_F(Unify, EraseRemovesTrivialEquations) {
    auto r = step(S("<a>->b = <a>->b"), Relation::u);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->rule, UnifyRule::erase);
    EXPECT_TRUE(r->set.empty());
    EXPECT_TRUE(normalize_u(S("<> = <>")).empty());
    EXPECT_FALSE(step_u(EquationSet{}));
}

TEST_F(Unify, WorkedExampleReachesSolvedForm) {
    EquationSet s = S("b = <a>->a; b = <c>->d");
    std::vector<UnifyRule> rules;
    while (auto r = step(s, Relation::u)) {
        rules.push_back(r->rule);
        s = r->set;
    }
    EXPECT_TRUE(equivalent_modulo_renaming(s, S("b = <a>->a; c = a; d = a"))) << to_string(s);
    EXPECT_TRUE(classify(s).solved);
    EXPECT_EQ(rules.front(), UnifyRule::subs);

    PreSubst psi = extract_mgu(S("b = <a>->a; c = a; d = a"));
    EXPECT_EQ(*psi.find(v("b")), P("<a>->a"));
    EXPECT_EQ(*psi.find(v("c")), P("a"));
    EXPECT_EQ(*psi.find(v("d")), P("a"));
    EXPECT_TRUE(psi.idempotent());
    EXPECT_TRUE(solves(psi, S("b = <a>->a; b = <c>->d")));
}

TEST_F(Unify, LengthMismatchIsBlocked) {
    EquationSet nf = normalize_u(S("b = <a>->a; b = <c,e>->d"));
    FormReport r = classify(nf);
    ASSERT_EQ(r.blocked.size(), 1u) << to_string(nf);
    const ListEquation& eq = nf[r.blocked[0]].as_list();
    EXPECT_EQ(eq.lhs.size() + eq.rhs.size(), 3u) << to_string(nf);
}

TEST_F(Unify, SubsOutLeavesListOccurrencesAlone) {
    EquationSet s = S("a = <b>->c; b = <a>->d");
    EXPECT_FALSE(step_o(s));
    EXPECT_TRUE(step_u(s));
    FormReport r = classify(s);
    EXPECT_FALSE(r.solved || r.unsolvable() || r.is_blocked());
    EXPECT_TRUE(classify(normalize_u(s)).unsolvable());
}

TEST_F(Unify, SubsOutRewritesSpineOccurrences) {
    EquationSet s = S("a = b; c = <d>->a");
    auto r = step(s, Relation::o);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->rule, UnifyRule::subs_out);
    EXPECT_EQ(normalize_o(s), S("a = b; c = <d>->b"));
}

TEST_F(Unify, MguRequiresSolvedForm) {
    EXPECT_TRUE(extract_mgu(EquationSet{}).empty());
    EXPECT_EQ(*extract_mgu(S("a = <b>->c")).find(v("a")), P("<b>->c"));
    EXPECT_THROW(extract_mgu(S("<a> = <b,c>")), NotSolvedForm);
    EXPECT_THROW(extract_mgu(S("a = <a>->b")), NotSolvedForm);
}

TEST_F(Unify, RenamingEquivalence) {
    EXPECT_TRUE(equivalent_modulo_renaming(S("a = <b>->b"), S("x = <y>->y")));
    EXPECT_FALSE(equivalent_modulo_renaming(S("a = <b>->b"), S("x = <y>->z")));
    EXPECT_TRUE(equivalent_modulo_renaming(S("a = b; c = d"), S("c = d; a = b")));
}

// Random rule orders reach non-equivalent normal forms here; both are
// unsolvable, so solved results are unaffected.
TEST_F(Unify, UnsolvableNormalFormsNeedNotBeUnique) {
    EquationSet s = S("e = d; e = <<c>->d,f>->b");
    std::vector<EquationSet> seen;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        std::mt19937_64 rng(seed);
        EquationSet nf = normalize_random(s, Relation::u, rng);
        EXPECT_TRUE(classify(nf).unsolvable());
        bool fresh = true;
        for (const auto& x : seen) fresh = fresh && !equivalent_modulo_renaming(x, nf);
        if (fresh) seen.push_back(nf);
    }
    EXPECT_EQ(seen.size(), 2u);
}

// Compared on solved results only: elsewhere the rule order matters.
TEST(UnifyProperties, FastAndLiteralNormalizersAgree) {
    std::mt19937_64 rng(3);
    std::size_t compared = 0;
    for (int i = 0; i < 400; ++i) {
        EquationSet s = acceptance::random_equation_set(rng);
        for (Relation rel : {Relation::u, Relation::o}) {
            auto f = normalize_fast(s, rel);
            if (!f || !classify(*f).solved) continue;
            ++compared;
            EXPECT_TRUE(equivalent_modulo_renaming(*f, normalize_literal(s, rel, nullptr, 100000))) << to_string(s);
        }
    }
    EXPECT_GT(compared, 20u);
}

TEST(UnifyProperties, SolvedNormalFormsSolveTheOriginalSet) {
    std::mt19937_64 rng(4);
    std::size_t solved = 0;
    for (int i = 0; i < 400; ++i) {
        EquationSet s = acceptance::random_equation_set(rng);
        EquationSet nf = normalize_u(s);
        if (!classify(nf).solved) continue;
        ++solved;
        EXPECT_TRUE(solves(extract_mgu(nf), s)) << to_string(s);
    }
    EXPECT_GT(solved, 10u);
}

TEST(UnifyProperties, NormalFormsAreNormal) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        EquationSet s = acceptance::random_equation_set(rng);
        EquationSet nf = normalize_u(s);
        EXPECT_FALSE(step_u(nf));
        FormReport r = classify(nf);
        EXPECT_TRUE(r.solved || r.unsolvable() || r.is_blocked()) << to_string(s);
    }
}

TEST(UnifyProperties, StepCountStaysUnderTheBound) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 200; ++i) {
        EquationSet s = acceptance::random_equation_set(rng);
        NormalizationStats st;
        normalize_literal(s, Relation::u, &st);
        EXPECT_LE(st.steps, u_step_bound(st)) << to_string(s);
    }
}

}  // namespace
}  // namespace itype
