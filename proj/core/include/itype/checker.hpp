#ifndef ITYPE_CHECKER_HPP
#define ITYPE_CHECKER_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "itype/pseudo.hpp"
#include "itype/term.hpp"
#include "itype/types.hpp"

namespace itype {

// A concrete type derivation. Nothing about it is assumed well formed; that
// is what validate decides.
struct Derivation {
    Rule rule = Rule::var;
    Term subject = Term::var("x");
    TypeEnv env;
    std::variant<IType, IMultiset> conclusion = IType::var(0);
    std::vector<Derivation> children;

    bool concludes_multiset() const noexcept { return std::holds_alternative<IMultiset>(conclusion); }
};

struct Violation {
    std::string path;  // child indices from the root, "/" for the root
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const noexcept { return violations.empty(); }
};

// One line per violation: "<path>: <message>".
std::string to_string(const ValidationReport& r);

ValidationReport validate(const Derivation& d, Mode system);

// Strong derivation of a normal form, built by induction on its shape:
// variables get the axiom, abstractions abs-I or abs-K (with a fresh domain
// variable), and x K1 ... Kn gives x the type [A1] -> ... -> [An] -> c.
// Throws std::invalid_argument unless t is normal.
Derivation derive_normal_form(const Term& t, VarId first_fresh = 0);

Derivation apply(const TypeSubst& phi, const Derivation& d);
void collect_vars(const Derivation& d, std::set<VarId>& out);

std::string to_string(const Derivation& d, bool ascii = false);

}  // namespace itype

#endif  // ITYPE_CHECKER_HPP
