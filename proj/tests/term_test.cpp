#include <gtest/gtest.h>

#include "itype/reduction.hpp"
#include "itype/term.hpp"

namespace itype {
namespace {

TEST(Term, ParsesAndPrintsWithMinimalParentheses) {
    EXPECT_EQ(to_string(parse_term("\\x.x")), "λx.x");
    EXPECT_EQ(to_string(parse_term("λx.x")), "λx.x");
    EXPECT_EQ(to_string(parse_term("(\\x.x) y")), "(λx.x) y");
    EXPECT_EQ(to_string(parse_term("x y z")), "x y z");
    EXPECT_EQ(to_string(parse_term("x (y z)")), "x (y z)");
    EXPECT_EQ(to_string(parse_term("\\x.\\y.x y")), "λx.λy.x y");
    EXPECT_EQ(to_string(parse_term("(\\x.x) (\\y.y)")), "(λx.x) (λy.y)");
    EXPECT_EQ(to_string(parse_term("x (\\y.y) z")), "x (λy.y) z");
    EXPECT_EQ(to_string(parse_term("\\x.x"), true), "\\x.x");
}

TEST(Term, RoundTripsThroughThePrinter) {
    for (const char* src : {"x", "\\x.x x", "(\\x.x x)(\\x.x x)", "\\f.\\x.f (f x)", "x (\\y.y y) (z w)",
                            "(\\x.\\y.\\z.x z (y z)) (\\x.\\y.x)"}) {
        Term t = parse_term(src);
        EXPECT_TRUE(alpha_equivalent(parse_term(to_string(t)), t)) << src;
        EXPECT_TRUE(alpha_equivalent(parse_term(to_string(t, true)), t)) << src;
    }
}

TEST(Term, RejectsMalformedInput) {
    for (const char* src : {"", "(", "\\x", "\\.x", "x)", "(x", "\\x.", "x $"}) {
        EXPECT_THROW(parse_term(src), ParseError) << src;
    }
}

TEST(Term, ParseErrorCarriesPosition) {
    try {
        parse_term("x )");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 2u);
    }
}

TEST(Term, SizeCountsNodes) {
    EXPECT_EQ(parse_term("x").size(), 1u);
    EXPECT_EQ(parse_term("\\x.x").size(), 2u);
    EXPECT_EQ(parse_term("(\\x.x) y").size(), 4u);
}

TEST(Term, AlphaEquivalence) {
    EXPECT_TRUE(alpha_equivalent(parse_term("\\x.x"), parse_term("\\y.y")));
    EXPECT_FALSE(alpha_equivalent(parse_term("\\x.y"), parse_term("\\x.z")));
    EXPECT_FALSE(alpha_equivalent(parse_term("\\x.\\y.x"), parse_term("\\x.\\y.y")));
    EXPECT_EQ(alpha_key(parse_term("\\a.\\b.a b c")), alpha_key(parse_term("\\x.\\y.x y c")));
    EXPECT_FALSE(identical(parse_term("\\x.x"), parse_term("\\y.y")));
}

TEST(Term, FreeVariables) {
    EXPECT_EQ(free_vars(parse_term("\\x.x y (\\y.y z)")), (std::set<std::string>{"y", "z"}));
    EXPECT_TRUE(occurs_free(parse_term("\\x.x y"), "y"));
    EXPECT_FALSE(occurs_free(parse_term("\\x.x y"), "x"));
}

TEST(Term, HygieneRenamesShadowingBinders) {
    Term id = Term::abs("x", Term::var("x"));
    Term delta = Term::abs("x", Term::app(Term::var("x"), Term::var("x")));
    Term t = make_hygienic(Term::app(Term::app(id, delta), Term::var("x")));
    EXPECT_TRUE(is_hygienic(t));
    EXPECT_TRUE(alpha_equivalent(t, parse_term("(\\x.x) (\\y.y y) x")));
    EXPECT_FALSE(is_hygienic(Term::abs("x", Term::abs("x", Term::var("x")))));
    EXPECT_TRUE(is_hygienic(parse_term("\\x.\\y.x")));
}

TEST(Term, ParsedTermsAreHygienic) {
    Term t = parse_term("(\\z.z z)(\\z.z z)");
    EXPECT_TRUE(is_hygienic(t));
}

TEST(Term, SubstitutionAvoidsCapture) {
    Term body = parse_term("\\y.x y");
    Term r = substitute(body, "x", parse_term("y"));
    EXPECT_TRUE(is_hygienic(r));
    ASSERT_TRUE(r.is_abs());
    EXPECT_NE(r.name(), "y");
    EXPECT_TRUE(alpha_equivalent(r, parse_term("\\w.y w")));
}

TEST(Term, ChurchNumerals) {
    EXPECT_TRUE(alpha_equivalent(church_numeral(0), parse_term("\\f.\\x.x")));
    EXPECT_TRUE(alpha_equivalent(church_numeral(2), parse_term("\\f.\\x.f (f x)")));
}

}  // namespace
}  // namespace itype
