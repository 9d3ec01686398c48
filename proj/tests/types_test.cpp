#include <gtest/gtest.h>

#include "itype/term.hpp"
#include "itype/types.hpp"

namespace itype {
namespace {

// Names a..z are interned first so parsed ids agree with var_name.
struct Types : ::testing::Test {
    NameInterner names;
    Types() {
        for (char c = 'a'; c <= 'z'; ++c) names.intern(std::string(1, c));
    }
    PreType P(const char* s) { return parse_pretype(s, names); }
    PreList L(const char* s) { return parse_prelist(s, names); }
    IType I(const char* s) { return parse_itype(s, names); }
    IMultiset M(const char* s) { return parse_imultiset(s, names); }
};

TEST_F(Types, RendersBitExactly) {
    EXPECT_EQ(to_string(P("<a,b>->c")), "<a,b>→c");
    EXPECT_EQ(to_string(P("<a>-><b>->c"), true), "<a>-><b>->c");
    EXPECT_EQ(to_string(P("<<a>->b>->c")), "<<a>→b>→c");
    EXPECT_EQ(to_string(L("<>")), "<>");
    EXPECT_EQ(to_string(I("[a]→[b]→a")), "[a]→[b]→a");
    EXPECT_EQ(to_string(M("[]")), "[]");
}

TEST_F(Types, VariableNames) {
    EXPECT_EQ(var_name(0), "a");
    EXPECT_EQ(var_name(25), "z");
    EXPECT_EQ(var_name(26), "a1");
    EXPECT_EQ(var_name(27), "b1");
}

TEST_F(Types, ParserRoundTrips) {
    for (const char* s : {"a", "<a>→b", "<<a,b>→c,d>→<>→e", "<a>→<b>→<c>→d"}) EXPECT_EQ(to_string(P(s)), s);
    EXPECT_THROW(P("<a"), ParseError);
    EXPECT_THROW(P("a b"), ParseError);
    EXPECT_THROW(I("[a]"), ParseError);
}

TEST_F(Types, ListsAreOrderedMultisetsAreNot) {
    EXPECT_NE(L("<a,b>"), L("<b,a>"));
    EXPECT_EQ(M("[a,b]"), M("[b,a]"));
    EXPECT_EQ(I("[a,[b]→c]→d"), I("[[b]→c,a]→d"));
    // Non-idempotent: multiplicity counts.
    EXPECT_NE(M("[a,a]"), M("[a]"));
    EXPECT_EQ(M("[a]").unite(M("[b,a]")), M("[a,a,b]"));
}

TEST_F(Types, VarsAndDisjointness) {
    const VarId a = names.intern("a"), b = names.intern("b");
    EXPECT_EQ(vars(P("<a>→b")), (std::set<VarId>{a, b}));
    EXPECT_TRUE(disjoint(P("a"), P("b")));
    EXPECT_FALSE(disjoint(P("<a>→c"), P("<b>→c")));
}

TEST_F(Types, MTranslationCommutesWithConcatenation) {
    PreList s = L("<a,<b>→c>"), t = L("<c,a>");
    PreList st = s;
    st.insert(st.end(), t.begin(), t.end());
    EXPECT_EQ(m_translate(st), m_translate(s).unite(m_translate(t)));
    EXPECT_EQ(m_translate(P("<b,a>→c")), I("[a,b]→c"));
}

TEST_F(Types, MTranslationOfEnvironments) {
    PreEnv g = PreEnv::single("x", L("<a,b>")).concat(PreEnv::single("x", L("<c>")));
    EXPECT_EQ(g("x"), L("<a,b,c>"));
    EXPECT_EQ(m_translate(g)("x"), M("[c,b,a]"));
    EXPECT_TRUE(g("y").empty());
    EXPECT_FALSE(g.without("x").in_domain("x"));
}

TEST_F(Types, StrongTypesHaveNoEmptyMultiset) {
    EXPECT_TRUE(is_strong(I("[a]→b")));
    EXPECT_FALSE(is_strong(I("[]→b")));
    EXPECT_FALSE(is_strong(I("[[]→a]→b")));
    EXPECT_TRUE(is_strong(m_translate(P("<<a>→b>→c"))));
}

TEST_F(Types, SubstitutionDistributesOverConstructors) {
    PreSubst s;
    s.bind(names.intern("a"), P("<c>→d"));
    EXPECT_EQ(apply(s, P("<a,b>→a")), P("<<c>→d,b>→<c>→d"));
    EXPECT_EQ(itype::apply(s, L("<a,b>")), L("<<c>→d,b>"));
}

TEST_F(Types, SubstitutionUnionRejectsConflicts) {
    PreSubst s1, s2, s3;
    s1.bind(names.intern("a"), P("b"));
    s2.bind(names.intern("a"), P("c"));
    s3.bind(names.intern("d"), P("c"));
    EXPECT_THROW(s1.unite(s2), SubstitutionConflict);
    PreSubst u = s1.unite(s3);
    EXPECT_EQ(u.bindings().size(), 2u);
    EXPECT_EQ(s1.unite(s1), s1);
}

TEST_F(Types, CompositionAppliesInnerFirst) {
    PreSubst outer, inner;
    inner.bind(names.intern("a"), P("<b>→b"));
    outer.bind(names.intern("b"), P("c"));
    PreSubst c = outer.compose(inner);
    EXPECT_EQ(apply(c, P("a")), P("<c>→c"));
    EXPECT_EQ(apply(c, P("b")), P("c"));
    EXPECT_TRUE(c.idempotent());
    PreSubst bad;
    bad.bind(names.intern("a"), P("<a>→b"));
    EXPECT_FALSE(bad.idempotent());
}

TEST_F(Types, IdentityBindingsAreNotStored) {
    PreSubst s;
    s.bind(names.intern("a"), P("a"));
    EXPECT_TRUE(s.empty());
}

TEST_F(Types, CanonicalRenamingByFirstOccurrence) {
    CanonicalRenaming ren;
    ren.visit(P("<q,p>→q"));
    EXPECT_EQ(to_string(apply(ren.as_pre_subst(), P("<q,p>→q"))), "<a,b>→a");
}

TEST_F(Types, TotalOrderPutsArrowsBeforeVariables) {
    EXPECT_LT(I("[a]→b"), I("a"));
    EXPECT_LT(I("a"), I("b"));
    EXPECT_EQ(to_string(M("[b,a,[a]→a]")), "[[a]→a,a,b]");
}

}  // namespace
}  // namespace itype
