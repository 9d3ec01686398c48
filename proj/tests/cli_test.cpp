#include <gtest/gtest.h>

#include <sstream>

#include "itype/cli.hpp"

namespace itype {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, InfersTheIdentity) {
    Result r = run({"infer", "\\x.x"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "⊢ λx.x : [a]→a\n");
    EXPECT_EQ(run({"infer", "--ascii", "\\x.x"}).out, "|- \\x.x : [a]->a\n");
}

TEST(Cli, FuelExhaustionExitsOne) {
    Result r = run({"infer", "--fuel", "50", "(\\z.z z)(\\z.z z)"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "FUEL-EXHAUSTED\n");
}

TEST(Cli, ReducesStepByStep) {
    Result r = run({"reduce", "--strategy", "finf", "(\\x.x) y"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0  (λx.x) y\n1  y\nnormal form after 1 step\n");
    EXPECT_EQ(run({"reduce", "--fuel", "3", "(\\z.z z)(\\z.z z)"}).code, 1);
}

TEST(Cli, ReadsTheTermFromStandardInput) {
    Result r = run({"parse"}, "\\x.\\y.x\n");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "λx.λy.x\n");
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"infer", "--system", "medium", "x"}).code, 2);
    EXPECT_EQ(run({"infer", "--system", "weak", "x"}).code, 2);
    Result bad = run({"infer", "(x"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(bad.err.rfind("parse error: ", 0), 0u);
    EXPECT_EQ(run({"check"}, "{not json").code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, InferJsonIsAcceptedByCheck) {
    for (const char* t : {"\\x.x", "(\\x.x x)(\\y.y)", "\\f.\\x.f (f x)", "x y"}) {
        Result inferred = run({"infer", "--format", "json", t});
        ASSERT_EQ(inferred.code, 0) << t;
        Result checked = run({"check"}, inferred.out);
        EXPECT_EQ(checked.code, 0) << t << "\n" << checked.out;
        EXPECT_EQ(checked.out, "valid (strong)\n");
    }
    // abs-I is not a weak rule.
    EXPECT_EQ(run({"check", "--system", "weak"}, run({"infer", "--format", "json", "\\x.x"}).out).code, 1);
}

TEST(Cli, DeterministicOutputIsBitStable) {
    std::vector<std::string> args{"trace", "--format", "json", "(\\f.\\x.f (f x)) (\\y.y)"};
    EXPECT_EQ(run(args).out, run(args).out);
}

}  // namespace
}  // namespace itype
