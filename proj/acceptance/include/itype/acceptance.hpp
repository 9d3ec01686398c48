#ifndef ITYPE_ACCEPTANCE_HPP
#define ITYPE_ACCEPTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "itype/equation.hpp"
#include "itype/infer.hpp"
#include "itype/reduction.hpp"
#include "itype/term.hpp"

namespace itype::acceptance {

// ---------------------------------------------------------------------------
// Generators.

// Uniform-ish random term with exactly `size` nodes. Binders are fresh;
// leaves pick a bound variable in scope or one of `free_names`.
Term random_term(std::size_t size, std::mt19937_64& rng,
                 const std::vector<std::string>& free_names = {"x", "y", "z"});

// Every beta-normal form with at most max_nodes nodes whose variables (bound
// and free) are drawn from `alphabet`, one per alpha-equivalence class.
std::vector<Term> enumerate_normal_forms(std::size_t max_nodes, const std::vector<std::string>& alphabet = {"x", "y", "z"});

// Random equation set: at most max_equations equations over `var_pool`
// variables, pre-types of depth at most max_depth. Roughly one equation in
// five is a list equation.
EquationSet random_equation_set(std::mt19937_64& rng, std::size_t max_equations = 8, std::size_t max_depth = 4,
                                std::size_t var_pool = 6);

// Random type of depth at most max_depth with non-empty multisets, over
// variables 0..var_pool-1.
IType random_itype(std::mt19937_64& rng, std::size_t max_depth, VarId var_pool);

// ---------------------------------------------------------------------------
// Corpus.

struct CorpusTerm {
    std::string label;
    Term term;
    SnVerdict verdict;
};

struct CorpusOptions {
    std::uint64_t seed = 20240611;
    std::size_t random_terms = 260;  // distinct alpha classes
    std::size_t min_size = 3;
    std::size_t max_size = 12;
    std::size_t oracle_budget = 4000;
    std::size_t oracle_max_term_size = 200;
};

// Named terms (Church numerals and arithmetic, S/K/I compositions, non-SN
// witnesses) followed by random terms containing at least one redex.
std::vector<CorpusTerm> build_corpus(const CorpusOptions& opts = {});
std::vector<CorpusTerm> named_terms(const CorpusOptions& opts = {});

// ---------------------------------------------------------------------------
// Criteria.

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

// "PASS  3 termination-dichotomy  12.3s  <detail>"
std::string to_string(const CriterionResult& r);

struct SuiteOptions {
    CorpusOptions corpus;
    std::size_t fuel = 500;
    std::size_t confluence_seeds = 10;
    std::size_t equation_sets = 200;
    std::size_t reconstruction_cases = 100;
    std::size_t closure_outcomes = 50;
    std::size_t closure_substitutions = 5;
    std::size_t normal_form_max_nodes = 10;
};

// Shares the corpus and inference results between criteria. Criteria may be
// run in any order; 7 reports on whatever inference runs of 2 to 5 have
// happened so far and runs them first if none have.
class Suite {
public:
    explicit Suite(SuiteOptions opts = {});
    ~Suite();
    Suite(const Suite&) = delete;
    Suite& operator=(const Suite&) = delete;

    static constexpr int criterion_count = 11;
    CriterionResult run(int id);
    std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

    const std::vector<CorpusTerm>& corpus();

private:
    struct State;
    std::unique_ptr<State> state_;
};

}  // namespace itype::acceptance

#endif  // ITYPE_ACCEPTANCE_HPP
