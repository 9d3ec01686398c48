#ifndef ITYPE_TERM_HPP
#define ITYPE_TERM_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace itype {

// Untyped lambda-term. Immutable; copies share structure.
//
// Terms produced by parse_term(), substitute() and the reduction functions
// are hygienic: no two binders share a name and no binder name equals a free
// variable name. operator== is alpha-equivalence; identical() compares names
// exactly.
class Term {
public:
    enum class Kind : std::uint8_t { variable, abstraction, application };

    static Term var(std::string name);
    static Term abs(std::string binder, Term body);
    static Term app(Term function, Term argument);

    Kind kind() const noexcept;
    bool is_var() const noexcept { return kind() == Kind::variable; }
    bool is_abs() const noexcept { return kind() == Kind::abstraction; }
    bool is_app() const noexcept { return kind() == Kind::application; }

    // Variable name, or the binder of an abstraction.
    const std::string& name() const;
    const Term& body() const;
    const Term& function() const;
    const Term& argument() const;

    // Number of nodes (variables + abstractions + applications).
    std::size_t size() const noexcept;

    // Same node in memory; a cheap sufficient test for identical().
    bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Exact structural equality, names included.
bool identical(const Term& a, const Term& b);
bool alpha_equivalent(const Term& a, const Term& b);

// Canonical key of the alpha-equivalence class (bound variables as de Bruijn
// indices, free variables by name).
std::string alpha_key(const Term& t);

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, std::string_view name);
// Every name occurring in t, bound or free.
std::set<std::string> all_names(const Term& t);

// Renames binders so that t satisfies the hygiene convention. The first
// binder (in pre-order) keeping a given name wins; later ones get fresh
// alphanumeric names derived from the original.
Term make_hygienic(const Term& t);
bool is_hygienic(const Term& t);

// Capture-avoiding body[replacement/target]; the result is hygienic.
Term substitute(const Term& body, std::string_view target, const Term& replacement);

// Concrete syntax: `\x.M` or `λx.M`, juxtaposition for application (left
// associative), parentheses for grouping. Identifiers start with a letter or
// digit and may continue with letters, digits, `_` and `'`.
Term parse_term(std::string_view source);

// Pretty-printer with minimal parentheses; the output parses back to an
// alpha-equivalent term.
std::string to_string(const Term& t, bool ascii = false);

// Church-style helpers used by corpora and tests.
Term church_numeral(unsigned n);

}  // namespace itype

#endif  // ITYPE_TERM_HPP
