#ifndef ITYPE_UNIFY_HPP
#define ITYPE_UNIFY_HPP

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "itype/equation.hpp"

namespace itype {

// u: the plain rules with subs. o: subs replaced by subs-out, which only
// rewrites occurrences outside lists.
enum class Relation : std::uint8_t { u, o };

struct FormReport {
    bool solved = false;
    std::vector<std::size_t> circular;  // indices into the classified set
    std::vector<std::size_t> blocked;

    bool unsolvable() const noexcept { return !circular.empty(); }
    bool is_blocked() const noexcept { return !blocked.empty(); }
};

FormReport classify(const EquationSet& s);
std::string describe(const FormReport& r);

enum class UnifyRule : std::uint8_t { erase, swap, arrow, list, subs, subs_out };
std::string to_string(UnifyRule r);

struct StepResult {
    EquationSet set;
    UnifyRule rule;
    std::size_t index;  // position of the equation the rule fired on
};

// One step under the fixed schedule: rules in the order erase, swap, arrow,
// list, subs (subs-out for o), each scanning equations in set order.
// Empty when the set is in normal form.
std::optional<StepResult> step(const EquationSet& s, Relation rel);
std::optional<EquationSet> step_u(const EquationSet& s);
std::optional<EquationSet> step_o(const EquationSet& s);

// One step chosen uniformly among every applicable (rule, equation) pair.
std::optional<StepResult> random_step(const EquationSet& s, Relation rel, std::mt19937_64& rng);

struct NormalizationStats {
    std::size_t steps = 0;
    std::size_t subs_steps = 0;
    std::size_t peak_weight = 0;
    std::size_t var_count = 0;
};

// A bound on the length of any u-sequence from a set with var_count variables
// whose weight never exceeded peak_weight: each subs solves a variable for
// good and between two subs steps every other step either shrinks the weight
// or is one of at most peak_weight swaps.
std::size_t u_step_bound(const NormalizationStats& stats);

class NonTermination : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterates the scheduled step. step_cap guards against non-termination and
// throws NonTermination when exceeded.
EquationSet normalize_literal(const EquationSet& s, Relation rel, NormalizationStats* stats = nullptr,
                              std::size_t step_cap = 10'000'000);
EquationSet normalize_random(const EquationSet& s, Relation rel, std::mt19937_64& rng,
                             NormalizationStats* stats = nullptr, std::size_t step_cap = 10'000'000);

// Union-find normalization. Returns nothing when the variable graph is cyclic,
// where the result would depend on rule order; callers then use the literal
// stepper.
std::optional<EquationSet> normalize_fast(const EquationSet& s, Relation rel);

// nf(S) and nfo(S): fast path with literal fallback.
EquationSet normalize_u(const EquationSet& s);
EquationSet normalize_o(const EquationSet& s);
EquationSet normalize(const EquationSet& s, Relation rel);

class NotSolvedForm : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// mgu(S)(a) = A for each a = A in a solved S.
PreSubst extract_mgu(const EquationSet& s);

// True when psi makes both sides of every equation of s equal.
bool solves(const PreSubst& psi, const EquationSet& s);

// Set equality up to a bijective renaming of variables.
bool equivalent_modulo_renaming(const EquationSet& a, const EquationSet& b);

}  // namespace itype

#endif  // ITYPE_UNIFY_HPP
