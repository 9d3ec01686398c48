#ifndef ITYPE_PSEUDO_HPP
#define ITYPE_PSEUDO_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "itype/equation.hpp"
#include "itype/term.hpp"
#include "itype/types.hpp"

namespace itype {

// weak: system N, with rule abs and many of any arity.
// strong: system Ns, with abs-I/abs-K and many of arity >= 1.
enum class Mode : std::uint8_t { weak, strong };
std::string to_string(Mode m);

enum class Rule : std::uint8_t { var, abs, abs_i, abs_k, many, app };
std::string to_string(Rule r);
std::optional<Rule> rule_from_string(std::string_view s);

struct PdNode;
using PdNodePtr = std::shared_ptr<const PdNode>;

// One judgement. The environment, many-node conclusions and local equations
// are functions of the children, the rule and the variables the node
// introduced (its own conclusion, plus the domain variable of abs-K), so
// nodes are only built through make_pd_node, which computes them.
struct PdNode {
    Rule rule;
    Term subject;
    PreEnv env;
    std::variant<PreType, PreList> conclusion;  // PreList exactly at many-nodes
    std::vector<PdNodePtr> children;
    std::optional<Equation> equation;  // the node's own contribution to E
    std::optional<PreType> k_domain;   // b in c = <b> -> a at abs-K

    const PreType& type() const { return std::get<PreType>(conclusion); }
    const PreList& list() const { return std::get<PreList>(conclusion); }
};

// own: the conclusion for var/abs/abs-I/abs-K/app (ignored at many).
PdNodePtr make_pd_node(Rule rule, const Term& subject, std::optional<PreType> own, std::vector<PdNodePtr> children,
                       std::optional<PreType> k_domain = std::nullopt);
// Same node over new children.
PdNodePtr rebuild(const PdNode& node, std::vector<PdNodePtr> children);

class PseudoDerivation {
public:
    PseudoDerivation(PdNodePtr root, Mode mode, VarId next_fresh)
        : root_(std::move(root)), mode_(mode), next_fresh_(next_fresh) {}

    const PdNode& root() const noexcept { return *root_; }
    const PdNodePtr& root_ptr() const noexcept { return root_; }
    Mode mode() const noexcept { return mode_; }
    // Every variable of the tree is below this.
    VarId next_fresh() const noexcept { return next_fresh_; }
    const Term& subject() const { return root_->subject; }
    std::size_t node_count() const;

private:
    PdNodePtr root_;
    Mode mode_;
    VarId next_fresh_;
};

// PD_min(M): every many-node has one premise. Variables are allocated from
// first_fresh in construction order (subtrees before the node's own).
PseudoDerivation minimal_pd(const Term& t, Mode mode, VarId first_fresh = 0);

// Post-order: the equations of the children, then the node's own.
EquationSet equations_of(const PseudoDerivation& pd);
EquationSet equations_of(const PdNode& node);

enum class EditKind : std::uint8_t { expansion, erasure };

struct StructuralEdit {
    EditKind kind;
    PreList anchor;
    std::size_t delta;

    friend bool operator==(const StructuralEdit&, const StructuralEdit&) = default;
};

std::string to_string(const StructuralEdit& e, bool ascii = false);

// Thrown when two many-nodes share the anchor list, which disjointness rules out.
class AmbiguousAnchor : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Path of child indices to the many-node concluding exactly `anchor`.
std::optional<std::vector<std::size_t>> find_many(const PseudoDerivation& pd, const PreList& anchor);

// refined=false: the node's premises become m+n fresh minimal copies, the
// first m concluding the old list entries. refined=true: existing premises are
// kept and n fresh copies appended. Unchanged when no many-node matches.
PseudoDerivation expand(const PseudoDerivation& pd, const PreList& anchor, std::size_t n, bool refined = true);
// Weak mode only: the node keeps max(m-n, 0) fresh minimal copies.
PseudoDerivation erase(const PseudoDerivation& pd, const PreList& anchor, std::size_t n);
PseudoDerivation apply_edit(const PseudoDerivation& pd, const StructuralEdit& e, bool refined = true);
PseudoDerivation apply_edits(const PseudoDerivation& pd, const std::vector<StructuralEdit>& edits,
                             bool refined = true);

// Edits that rebuild `target` from PD_min of its subject, read off the shape
// top-down: each many-node is grown (or, in weak mode, emptied) to the arity
// it has in target, then its premises are visited. Anchors refer to the tree
// the edits are applied to, which starts at minimal_pd(subject, mode, first_fresh).
std::vector<StructuralEdit> reconstruct_edits(const PseudoDerivation& target, VarId first_fresh);

// Shape, environment, conclusion, equation, subject and disjointness checks.
// Empty when the tree is a pseudo-derivation of its mode.
std::vector<std::string> structural_violations(const PseudoDerivation& pd);

// Text with variables renumbered by first occurrence in a pre-order walk.
// permutation_blind sorts many-premises by shape first.
std::string canonical_form(const PseudoDerivation& pd, bool permutation_blind = false);
// The renaming canonical_form (without permutation) uses.
CanonicalRenaming canonical_renaming(const PseudoDerivation& pd);

PseudoDerivation apply(const PreSubst& s, const PseudoDerivation& pd);

// Conclusion lists of all many-nodes in pre-order.
std::vector<PreList> many_conclusions(const PseudoDerivation& pd);

// Multi-line rendering, one judgement per line indented by depth.
std::string to_string(const PseudoDerivation& pd, bool ascii = false);
std::string judgement(const PdNode& n, bool ascii = false, const VarNamer& namer = var_name);

}  // namespace itype

#endif  // ITYPE_PSEUDO_HPP
