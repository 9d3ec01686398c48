#include <gtest/gtest.h>

#include <map>

#include "itype/infer.hpp"
#include "itype/unify.hpp"

namespace itype {
namespace {

InferOutcome run(const char* src, InferConfig cfg = {}) { return infer_strong(parse_term(src), cfg); }

std::size_t count(const InferOutcome& o, TraceEvent::Kind k) {
    std::size_t n = 0;
    for (const auto& e : o.trace) n += e.kind == k;
    return n;
}

TEST(Infer, NamedTypings) {
    const std::pair<const char*, const char*> cases[] = {
        {"\\x.x", "⊢ λx.x : [a]→a"},
        {"\\x.\\y.x", "⊢ λx.λy.x : [a]→[b]→a"},
        {"\\x.x x", "⊢ λx.x x : [[a]→b,a]→b"},
        {"(\\x.x x)(\\y.y)", "⊢ (λx.x x) (λy.y) : [a]→a"},
        {"x", "x:[a] ⊢ x : a"},
    };
    for (const auto& [src, want] : cases) {
        InferOutcome o = run(src);
        ASSERT_TRUE(o.ok()) << src;
        EXPECT_EQ(to_string(final_typing(o)), want);
        EXPECT_NO_THROW(build_checked_derivation(o));
    }
}

TEST(Infer, SelfApplicationOfIdentityNeedsOneExpansion) {
    InferConfig cfg;
    cfg.trace = true;
    InferOutcome o = run("(\\x.x x)(\\y.y)", cfg);
    ASSERT_TRUE(o.ok());
    EXPECT_EQ(o.expansions, 1u);
    EXPECT_EQ(count(o, TraceEvent::Kind::expanded), 1u);
    EXPECT_EQ(count(o, TraceEvent::Kind::final_unification), 1u);
    Derivation d = build_checked_derivation(o);
    const Derivation& arg = d.children.at(1);
    EXPECT_EQ(arg.rule, Rule::many);
    EXPECT_EQ(arg.children.size(), 2u);
}

TEST(Infer, OutcomeInvariantOnSuccess) {
    InferOutcome o = run("(\\f.\\x.f (f x)) (\\y.y)");
    ASSERT_TRUE(o.ok());
    EquationSet nf = normalize_u(equations_of(o.pd));
    EXPECT_TRUE(classify(nf).solved);
    EXPECT_EQ(*o.psi, extract_mgu(nf));
}

TEST(Infer, NonNormalizingTermsExhaustFuel) {
    InferConfig cfg;
    cfg.fuel = 50;
    EXPECT_EQ(run("(\\z.z z)(\\z.z z)", cfg).status, InferStatus::fuel_exhausted);
    EXPECT_EQ(run("(\\y.x)((\\z.z z)(\\z.z z))", cfg).status, InferStatus::fuel_exhausted);
}

TEST(Infer, ZeroFuelIsRejected) {
    InferConfig cfg;
    cfg.fuel = 0;
    EXPECT_THROW(run("\\x.x", cfg), std::invalid_argument);
}

TEST(Infer, CancellationStopsBetweenRounds) {
    std::stop_source src;
    src.request_stop();
    InferConfig cfg;
    cfg.stop = src.get_token();
    EXPECT_EQ(run("(\\z.z z)(\\z.z z)", cfg).status, InferStatus::cancelled);
}

TEST(Infer, EveryExpansionFollowsAMatchingChoice) {
    InferConfig cfg;
    cfg.trace = true;
    InferOutcome o = run("(\\f.\\x.f (f (f x))) (\\y.y) z", cfg);
    ASSERT_TRUE(o.ok());
    for (std::size_t i = 0; i < o.trace.size(); ++i) {
        if (o.trace[i].kind != TraceEvent::Kind::expanded) continue;
        ASSERT_GT(i, 0u);
        const TraceEvent& chosen = o.trace[i - 1];
        ASSERT_EQ(chosen.kind, TraceEvent::Kind::blocked_chosen);
        auto [l, r] = chosen.lengths;
        EXPECT_EQ(o.trace[i].delta, l > r ? l - r : r - l);
    }
}

TEST(Infer, ListsNeverShrink) {
    InferConfig cfg;
    std::map<std::string, std::size_t> longest;
    bool shrank = false;
    // Lists are identified by their first element, which expansion keeps.
    cfg.on_expansion = [&](const PseudoDerivation& pd) {
        for (const auto& l : many_conclusions(pd)) {
            std::string key = to_string(l.at(0));
            if (l.size() < longest[key]) shrank = true;
            longest[key] = std::max(longest[key], l.size());
        }
    };
    InferOutcome o = run("(\\f.\\x.f (f x)) (\\f.\\x.f (f x))", cfg);
    ASSERT_TRUE(o.ok());
    EXPECT_GT(o.expansions, 1u);
    EXPECT_FALSE(shrank);
}

TEST(Infer, EnginesAgree) {
    for (const char* src : {"(\\x.x x)(\\y.y)", "(\\f.\\x.f (f x)) (\\f.\\x.f (f x))", "\\x.\\y.\\z.x z (y z)"}) {
        InferConfig fast, literal;
        literal.engine = UnifyEngine::literal;
        InferOutcome a = run(src, fast), b = run(src, literal);
        ASSERT_TRUE(a.ok() && b.ok()) << src;
        EXPECT_EQ(to_string(final_typing(a)), to_string(final_typing(b))) << src;
        EXPECT_EQ(canonical_form(a.pd), canonical_form(b.pd)) << src;
    }
}

TEST(Infer, SeedsDoNotChangeTheResult) {
    const char* src = "(\\f.\\x.f (f x)) (\\f.\\x.f (f x))";
    std::string first;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        InferConfig cfg;
        cfg.deterministic = false;
        cfg.choice_seed = seed;
        InferOutcome o = run(src, cfg);
        ASSERT_TRUE(o.ok());
        std::string got = to_string(final_typing(o));
        if (seed == 0) first = got;
        EXPECT_EQ(got, first);
    }
}

TEST(Infer, DeterministicRunsAreIdentical) {
    InferConfig cfg;
    cfg.trace = true;
    InferOutcome a = run("(\\x.x x)(\\y.y)", cfg), b = run("(\\x.x x)(\\y.y)", cfg);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(to_string(a.trace[i]), to_string(b.trace[i]));
}

}  // namespace
}  // namespace itype
