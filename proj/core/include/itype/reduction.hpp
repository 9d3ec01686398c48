#ifndef ITYPE_REDUCTION_HPP
#define ITYPE_REDUCTION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "itype/term.hpp"

namespace itype {

// Child selector on the way from the root to a subterm.
enum class PathStep : std::uint8_t { body, function, argument };
using TermPath = std::vector<PathStep>;

enum class RedexKind : std::uint8_t { i_redex, k_redex };

struct RedexOccurrence {
    TermPath path;
    RedexKind kind;

    friend bool operator==(const RedexOccurrence&, const RedexOccurrence&) = default;
};

class InvalidPath : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const Term& subterm_at(const Term& t, const TermPath& path);
Term replace_at(const Term& t, const TermPath& path, const Term& replacement);
std::string to_string(const TermPath& path);

// All redexes in leftmost-outermost (pre-order, function before argument) order.
std::vector<RedexOccurrence> find_redexes(const Term& t);
std::optional<RedexOccurrence> leftmost_outermost_redex(const Term& t);

// Contracts the redex at r.path. Throws InvalidPath when there is none.
Term beta_step(const Term& t, const RedexOccurrence& r);

bool is_normal_form(const Term& t);
bool is_head_normal_form(const Term& t);

// Barendregt's perpetual strategy: contract the leftmost-outermost redex
// (λx.P)Q when x occurs in P, drop the argument when it does not and Q is
// normal, otherwise take one F-infinity step inside Q. Identity on normal forms.
Term f_infinity_step(const Term& t);
// Plain normal-order step; identity on normal forms.
Term leftmost_outermost_step(const Term& t);

enum class Strategy : std::uint8_t { f_infinity, leftmost_outermost };
Term reduction_step(const Term& t, Strategy strategy);

struct NormalFormResult {
    bool reached = false;  // false: fuel exhausted
    Term term;
    std::size_t steps = 0;
};

// Iterates the strategy; fuel counts contraction steps.
NormalFormResult reduce_to_nf(const Term& t, std::size_t fuel,
                              Strategy strategy = Strategy::f_infinity);

enum class SnVerdict : std::uint8_t { strongly_normalizing, not_strongly_normalizing, budget_exceeded };
std::string to_string(SnVerdict v);

// Exhaustive exploration of the reduction graph modulo alpha-equivalence.
// A term revisited on the current path proves non-termination; a finite
// acyclic graph proves strong normalization. node_budget bounds the number of
// distinct terms visited; reaching a term larger than max_term_size nodes
// also gives up.
SnVerdict is_strongly_normalizing_oracle(const Term& t, std::size_t node_budget, std::size_t max_term_size = 2000);

// Every one-step reduct, in find_redexes order.
std::vector<Term> one_step_reducts(const Term& t);

}  // namespace itype

#endif  // ITYPE_REDUCTION_HPP
