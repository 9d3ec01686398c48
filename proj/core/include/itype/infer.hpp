#ifndef ITYPE_INFER_HPP
#define ITYPE_INFER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "itype/checker.hpp"
#include "itype/equation.hpp"
#include "itype/pseudo.hpp"
#include "itype/unify.hpp"

namespace itype {

enum class UnifyEngine : std::uint8_t {
    fast,     // union-find with literal fallback
    literal,  // the rule stepper only
};

struct InferConfig {
    std::size_t fuel = 1000;  // expansion rounds
    std::uint64_t choice_seed = 0;
    bool deterministic = true;  // blocked equations tried in set order
    bool trace = false;
    // Also compute nf(E) every round and record unsolvable ones.
    bool audit_unsolvable = false;
    UnifyEngine engine = UnifyEngine::fast;
    std::stop_token stop;
    // Called with the pseudo-derivation produced by every expansion.
    std::function<void(const PseudoDerivation&)> on_expansion;
};

struct TraceEvent {
    enum class Kind : std::uint8_t {
        normalized,          // set: nfo(E) of the current pseudo-derivation
        blocked_chosen,      // equation, lengths
        no_op,               // the chosen equation's shorter list concludes no many-node
        expanded,            // anchor, delta
        final_unification,   // set: nf(E)
    };
    Kind kind;
    std::size_t round = 0;
    std::optional<EquationSet> set;
    std::optional<Equation> equation;
    std::pair<std::size_t, std::size_t> lengths{0, 0};
    PreList anchor;
    std::size_t delta = 0;
};

std::string to_string(TraceEvent::Kind k);
std::string to_string(const TraceEvent& e, bool ascii = false);

enum class InferStatus : std::uint8_t {
    success,
    fuel_exhausted,
    stalled,     // every blocked equation was a no-op in one round
    cancelled,
    unsolvable,  // nf(E) circular at the end
};

std::string to_string(InferStatus s);

struct UnsolvableWitness {
    std::size_t round;
    EquationSet nf;
};

struct InferOutcome {
    InferStatus status = InferStatus::fuel_exhausted;
    PseudoDerivation pd;
    std::optional<PreSubst> psi;
    std::optional<EquationSet> solved;
    std::vector<TraceEvent> trace;
    std::size_t expansions = 0;
    std::vector<UnsolvableWitness> unsolvable_nfs;  // filled when auditing

    bool ok() const noexcept { return status == InferStatus::success; }
};

InferOutcome infer_strong(const Term& t, const InferConfig& cfg = {});

struct Typing {
    TypeEnv env;
    Term subject;
    IType type;
};

// m(psi(root judgement)). Requires a successful outcome.
Typing final_typing(const InferOutcome& out);

// m(psi(pd)) checked against the strong system. Throws std::logic_error if
// the checker rejects it.
Derivation build_checked_derivation(const InferOutcome& out);

// m applied node by node.
Derivation to_derivation(const PseudoDerivation& pd);

// "Γ ⊢ M : A" with type variables renamed a, b, ... by first occurrence,
// environment first (by term variable), then the type.
std::string to_string(const Typing& t, bool ascii = false);

}  // namespace itype

#endif  // ITYPE_INFER_HPP
