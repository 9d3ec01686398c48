#ifndef ITYPE_EQUATION_HPP
#define ITYPE_EQUATION_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "itype/types.hpp"

namespace itype {

struct TypeEquation {
    PreType lhs;
    PreType rhs;
    friend bool operator==(const TypeEquation&, const TypeEquation&) = default;
};

struct ListEquation {
    PreList lhs;
    PreList rhs;
    friend bool operator==(const ListEquation&, const ListEquation&) = default;
};

class Equation {
public:
    Equation(PreType lhs, PreType rhs) : eq_(TypeEquation{std::move(lhs), std::move(rhs)}) {}
    Equation(PreList lhs, PreList rhs) : eq_(ListEquation{std::move(lhs), std::move(rhs)}) {}

    bool is_type() const noexcept { return std::holds_alternative<TypeEquation>(eq_); }
    bool is_list() const noexcept { return !is_type(); }
    const TypeEquation& as_type() const { return std::get<TypeEquation>(eq_); }
    const ListEquation& as_list() const { return std::get<ListEquation>(eq_); }

    // A list equation whose sides differ in length.
    bool is_blocked() const noexcept;
    // a = A with a occurring in A != a.
    bool is_circular() const;

    std::size_t hash() const noexcept;
    std::size_t size() const noexcept;

    friend bool operator==(const Equation&, const Equation&) = default;

private:
    std::variant<TypeEquation, ListEquation> eq_;
};

void collect_vars(const Equation& e, std::set<VarId>& out);
Equation apply(const PreSubst& s, const Equation& e);
std::string to_string(const Equation& e, bool ascii = false, const VarNamer& namer = var_name);

// Ordered collection with set semantics: inserting an equation already
// present is a no-op, so the first occurrence fixes the position.
class EquationSet {
public:
    EquationSet() = default;
    EquationSet(std::initializer_list<Equation> eqs);
    explicit EquationSet(const std::vector<Equation>& eqs);

    bool insert(Equation e);
    bool contains(const Equation& e) const;
    std::size_t size() const noexcept { return eqs_.size(); }
    bool empty() const noexcept { return eqs_.empty(); }
    const std::vector<Equation>& equations() const noexcept { return eqs_; }
    auto begin() const noexcept { return eqs_.begin(); }
    auto end() const noexcept { return eqs_.end(); }
    const Equation& operator[](std::size_t i) const { return eqs_[i]; }

    std::set<VarId> vars() const;
    // Sum of equation sizes.
    std::size_t weight() const noexcept;

    // Order-sensitive comparison; use equivalent_modulo_renaming for the
    // mathematical notion.
    friend bool operator==(const EquationSet& a, const EquationSet& b) { return a.eqs_ == b.eqs_; }

private:
    struct Hash {
        std::size_t operator()(const Equation& e) const noexcept { return e.hash(); }
    };
    std::vector<Equation> eqs_;
    std::unordered_set<Equation, Hash> index_;
};

EquationSet apply(const PreSubst& s, const EquationSet& set);
// One equation per line, "LHS = RHS".
std::string to_string(const EquationSet& set, bool ascii = false, const VarNamer& namer = var_name);

// Parses "LHS = RHS" equations separated by newlines or ';'. A side starting
// with '<' is a list. "≐" is accepted for '='.
EquationSet parse_equations(std::string_view text, NameInterner& names);

}  // namespace itype

#endif  // ITYPE_EQUATION_HPP
