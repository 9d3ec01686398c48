#include <gtest/gtest.h>

#include <random>

#include "itype/acceptance.hpp"
#include "itype/pseudo.hpp"
#include "itype/unify.hpp"

namespace itype {
namespace {

bool same_up_to_renaming(const EquationSet& got, const char* want) {
    NameInterner names;
    return equivalent_modulo_renaming(got, parse_equations(want, names));
}

TEST(Pseudo, MinimalDerivationOfARedex) {
    PseudoDerivation pd = minimal_pd(parse_term("(\\x.x) y"), Mode::weak);
    EXPECT_EQ(pd.root().rule, Rule::app);
    EXPECT_EQ(pd.node_count(), 5u);
    EXPECT_TRUE(structural_violations(pd).empty());
    EXPECT_TRUE(same_up_to_renaming(equations_of(pd), "b = <a>->a; b = <c>->d"));
    ASSERT_EQ(many_conclusions(pd).size(), 1u);
    EXPECT_EQ(many_conclusions(pd)[0].size(), 1u);
}

TEST(Pseudo, StrongModeUsesAbsIAndAbsK) {
    PseudoDerivation pd = minimal_pd(parse_term("\\x.\\y.x"), Mode::strong);
    EXPECT_EQ(pd.root().rule, Rule::abs_i);
    EXPECT_EQ(pd.root().children.at(0)->rule, Rule::abs_k);
    EXPECT_TRUE(structural_violations(pd).empty());
    EXPECT_EQ(minimal_pd(parse_term("\\x.\\y.x"), Mode::weak).root().rule, Rule::abs);
}

TEST(Pseudo, ExpansionAndErasureChangeListLengths) {
    PseudoDerivation pd = minimal_pd(parse_term("(\\x.x) y"), Mode::weak);
    PreList anchor = many_conclusions(pd).at(0);

    PseudoDerivation grown = expand(pd, anchor, 1);
    EXPECT_EQ(many_conclusions(grown).at(0).size(), 2u);
    EXPECT_TRUE(structural_violations(grown).empty());
    EXPECT_TRUE(same_up_to_renaming(normalize_u(equations_of(grown)), "b = <a>->a; <a> = <c,e>; d = a"));

    PseudoDerivation shrunk = erase(pd, anchor, 1);
    EXPECT_TRUE(many_conclusions(shrunk).at(0).empty());
    EXPECT_TRUE(same_up_to_renaming(normalize_u(equations_of(shrunk)), "b = <a>->a; <a> = <>; d = a"));
    EXPECT_TRUE(many_conclusions(erase(pd, anchor, 5)).at(0).empty());
}

TEST(Pseudo, RefinedExpansionAppendsAtTheEnd) {
    PseudoDerivation pd = minimal_pd(parse_term("(\\x.x) y"), Mode::strong);
    PreList anchor = many_conclusions(pd).at(0);
    PreList grown = many_conclusions(expand(pd, anchor, 2)).at(0);
    ASSERT_EQ(grown.size(), 3u);
    EXPECT_EQ(grown[0], anchor[0]);
}

TEST(Pseudo, EditPreconditions) {
    PseudoDerivation weak = minimal_pd(parse_term("(\\x.x) y"), Mode::weak);
    PseudoDerivation strong = minimal_pd(parse_term("(\\x.x) y"), Mode::strong);
    PreList anchor = many_conclusions(weak).at(0);
    EXPECT_THROW(expand(weak, anchor, 0), std::invalid_argument);
    EXPECT_THROW(expand(weak, PreList{}, 1), std::invalid_argument);
    EXPECT_THROW(erase(strong, many_conclusions(strong).at(0), 1), std::invalid_argument);
    EXPECT_FALSE(find_many(weak, PreList{PreType::var(999)}));
    EXPECT_TRUE(find_many(weak, anchor));
}

TEST(Pseudo, AnchorsConcludingSeveralManyNodesAreAmbiguous) {
    PseudoDerivation pd = minimal_pd(parse_term("x y y"), Mode::strong);
    auto lists = many_conclusions(pd);
    ASSERT_EQ(lists.size(), 2u);
    PreSubst s;
    s.bind(lists[1].at(0).var_id(), lists[0].at(0));
    PseudoDerivation merged = apply(s, pd);
    EXPECT_THROW(expand(merged, lists[0], 1), AmbiguousAnchor);
}

TEST(Pseudo, EditSequencesReplayAndReconstruct) {
    Term t = parse_term("(\\x.x x) (\\y.y)");
    PseudoDerivation pd = minimal_pd(t, Mode::strong);
    std::vector<StructuralEdit> edits{{EditKind::expansion, many_conclusions(pd).at(0), 2}};
    PseudoDerivation target = apply_edits(pd, edits);
    PseudoDerivation rebuilt = apply_edits(minimal_pd(t, Mode::strong), reconstruct_edits(target, 0));
    EXPECT_EQ(canonical_form(rebuilt, true), canonical_form(target, true));
}

TEST(Pseudo, CanonicalFormIgnoresVariableNames) {
    Term t = parse_term("\\f.\\x.f (f x)");
    EXPECT_EQ(canonical_form(minimal_pd(t, Mode::strong, 0)), canonical_form(minimal_pd(t, Mode::strong, 40)));
    EXPECT_NE(canonical_form(minimal_pd(t, Mode::strong)), canonical_form(minimal_pd(t, Mode::weak)));
}

TEST(Pseudo, StrongPseudoDerivationsHaveNoEmptyLists) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 150; ++i) {
        Term t = make_hygienic(acceptance::random_term(2 + i % 10, rng));
        PseudoDerivation pd = minimal_pd(t, Mode::strong);
        EXPECT_TRUE(structural_violations(pd).empty()) << to_string(t);
        for (const auto& l : many_conclusions(pd)) EXPECT_FALSE(l.empty());
        for (const auto& l : many_conclusions(pd)) {
            PseudoDerivation g = expand(pd, l, 1);
            EXPECT_TRUE(structural_violations(g).empty()) << to_string(t);
            break;
        }
    }
}

TEST(Pseudo, FreshVariablesStayAboveTheWatermark) {
    PseudoDerivation pd = minimal_pd(parse_term("(\\x.x x) y"), Mode::strong, 10);
    std::set<VarId> vs = equations_of(pd).vars();
    ASSERT_FALSE(vs.empty());
    EXPECT_GE(*vs.begin(), 10u);
    EXPECT_LT(*vs.rbegin(), pd.next_fresh());
}

}  // namespace
}  // namespace itype
