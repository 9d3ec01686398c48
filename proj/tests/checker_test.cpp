#include <gtest/gtest.h>

#include <random>

#include "itype/acceptance.hpp"
#include "itype/checker.hpp"
#include "itype/reduction.hpp"
#include "itype/serialize.hpp"

namespace itype {
namespace {

// x:[a,b] |- (\y.x) x : a
const char* k_redex = R"({
  "rule": "app", "subject": "(\\y.x) x", "env": {"x": "[a,b]"}, "conclusion": "a",
  "children": [
    {"rule": "abs-K", "subject": "\\y.x", "env": {"x": "[a]"}, "conclusion": "[b]->a",
     "children": [{"rule": "var", "subject": "x", "env": {"x": "[a]"}, "conclusion": "a"}]},
    {"rule": "many", "subject": "x", "env": {"x": "[b]"}, "conclusion": "[b]",
     "children": [{"rule": "var", "subject": "x", "env": {"x": "[b]"}, "conclusion": "b"}]}
  ]
})";

Derivation load(const char* text) { return parse_derivation_json(text).derivation; }

TEST(Checker, AcceptsAStrongDerivationOfAKRedex) {
    ValidationReport r = validate(load(k_redex), Mode::strong);
    EXPECT_TRUE(r.valid()) << to_string(r);
    EXPECT_FALSE(validate(load(k_redex), Mode::weak).valid());
}

TEST(Checker, AxiomNeedsASingletonEnvironment) {
    ValidationReport r = validate(
        load(R"({"rule":"var","subject":"x","env":{"x":"[a,b]"},"conclusion":"a"})"), Mode::strong);
    ASSERT_FALSE(r.valid());
    EXPECT_EQ(r.violations[0].path, "/");
}

TEST(Checker, StrongSystemRejectsEmptyMultisets) {
    const char* weak_k = R"({"rule":"abs","subject":"\\y.x","env":{"x":"[a]"},"conclusion":"[]->a",
        "children":[{"rule":"var","subject":"x","env":{"x":"[a]"},"conclusion":"a"}]})";
    EXPECT_TRUE(validate(load(weak_k), Mode::weak).valid());
    EXPECT_FALSE(validate(load(weak_k), Mode::strong).valid());
    const char* empty_many = R"({"rule":"many","subject":"x","conclusion":"[]"})";
    EXPECT_TRUE(validate(load(empty_many), Mode::weak).valid());
    EXPECT_FALSE(validate(load(empty_many), Mode::strong).valid());
}

TEST(Checker, ReportsThePathOfTheFaultyNode) {
    std::string bad = k_redex;
    bad.replace(bad.find("\"conclusion\": \"b\""), 17, "\"conclusion\": \"c\"");
    ValidationReport r = validate(load(bad.c_str()), Mode::strong);
    ASSERT_FALSE(r.valid());
    bool at_many = false;
    for (const auto& v : r.violations) at_many = at_many || v.path == "/1";
    EXPECT_TRUE(at_many) << to_string(r);
}

TEST(Checker, ManyIsBlindToPremiseOrder) {
    const char* swapped = R"({"rule":"many","subject":"x","env":{"x":"[a,b]"},"conclusion":"[b,a]",
        "children":[{"rule":"var","subject":"x","env":{"x":"[a]"},"conclusion":"a"},
                    {"rule":"var","subject":"x","env":{"x":"[b]"},"conclusion":"b"}]})";
    EXPECT_TRUE(validate(load(swapped), Mode::strong).valid());
}

TEST(Checker, NormalFormDerivations) {
    Derivation id = derive_normal_form(parse_term("\\x.x"));
    EXPECT_TRUE(validate(id, Mode::strong).valid());
    EXPECT_EQ(to_string(std::get<IType>(id.conclusion)), "[a]→a");

    Derivation k = derive_normal_form(parse_term("\\x.\\y.x"));
    EXPECT_EQ(k.children.at(0).rule, Rule::abs_k);
    EXPECT_TRUE(validate(k, Mode::strong).valid());

    EXPECT_THROW(derive_normal_form(parse_term("(\\x.x) y")), std::invalid_argument);
}

TEST(Checker, EveryEnumeratedNormalFormIsTypable) {
    auto nfs = acceptance::enumerate_normal_forms(6, {"x", "y"});
    ASSERT_GT(nfs.size(), 50u);
    for (const Term& t : nfs) {
        ValidationReport r = validate(derive_normal_form(t), Mode::strong);
        EXPECT_TRUE(r.valid()) << to_string(t) << "\n" << to_string(r);
    }
}

TEST(Checker, SubstitutionPreservesValidity) {
    Derivation d = load(k_redex);
    NameInterner names;
    names.intern("a");
    names.intern("b");
    TypeSubst phi{{0, parse_itype("[c,c]->d", names)}, {1, parse_itype("e", names)}};
    EXPECT_TRUE(validate(itype::apply(phi, d), Mode::strong).valid());
}

}  // namespace
}  // namespace itype
