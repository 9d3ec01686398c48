#include "itype/equation.hpp"

#include <cctype>

#include "itype/term.hpp"

namespace itype {

bool Equation::is_blocked() const noexcept {
    if (!is_list()) return false;
    const auto& e = as_list();
    return e.lhs.size() != e.rhs.size();
}

bool Equation::is_circular() const {
    if (!is_type()) return false;
    const auto& e = as_type();
    return e.lhs.is_var() && e.rhs.is_arrow() && occurs(e.lhs.var_id(), e.rhs);
}

std::size_t Equation::hash() const noexcept {
    if (is_type()) {
        const auto& e = as_type();
        return e.lhs.hash() * 31 + e.rhs.hash();
    }
    const auto& e = as_list();
    return (hash_list(e.lhs) * 31 + hash_list(e.rhs)) ^ 0x5bd1e995;
}

std::size_t Equation::size() const noexcept {
    if (is_type()) return as_type().lhs.size() + as_type().rhs.size();
    return list_size(as_list().lhs) + list_size(as_list().rhs);
}

void collect_vars(const Equation& e, std::set<VarId>& out) {
    if (e.is_type()) {
        collect_vars(e.as_type().lhs, out);
        collect_vars(e.as_type().rhs, out);
    } else {
        collect_vars(e.as_list().lhs, out);
        collect_vars(e.as_list().rhs, out);
    }
}

Equation apply(const PreSubst& s, const Equation& e) {
    if (e.is_type()) return Equation(apply(s, e.as_type().lhs), apply(s, e.as_type().rhs));
    return Equation(apply(s, e.as_list().lhs), apply(s, e.as_list().rhs));
}

std::string to_string(const Equation& e, bool ascii, const VarNamer& namer) {
    if (e.is_type()) {
        return to_string(e.as_type().lhs, ascii, namer) + " = " + to_string(e.as_type().rhs, ascii, namer);
    }
    return to_string(e.as_list().lhs, ascii, namer) + " = " + to_string(e.as_list().rhs, ascii, namer);
}

EquationSet::EquationSet(std::initializer_list<Equation> eqs) {
    for (const auto& e : eqs) insert(e);
}

EquationSet::EquationSet(const std::vector<Equation>& eqs) {
    for (const auto& e : eqs) insert(e);
}

bool EquationSet::insert(Equation e) {
    if (!index_.insert(e).second) return false;
    eqs_.push_back(std::move(e));
    return true;
}

bool EquationSet::contains(const Equation& e) const { return index_.contains(e); }

std::set<VarId> EquationSet::vars() const {
    std::set<VarId> out;
    for (const auto& e : eqs_) collect_vars(e, out);
    return out;
}

std::size_t EquationSet::weight() const noexcept {
    std::size_t w = 0;
    for (const auto& e : eqs_) w += e.size();
    return w;
}

EquationSet apply(const PreSubst& s, const EquationSet& set) {
    EquationSet out;
    for (const auto& e : set) out.insert(apply(s, e));
    return out;
}

std::string to_string(const EquationSet& set, bool ascii, const VarNamer& namer) {
    std::string out;
    for (const auto& e : set) {
        out += to_string(e, ascii, namer);
        out += '\n';
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

EquationSet parse_equations(std::string_view text, NameInterner& names) {
    EquationSet out;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        std::size_t end = text.find_first_of(";\n", offset);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = trim(text.substr(offset, end - offset));
        if (!line.empty()) {
            std::size_t eq = line.find("\xE2\x89\x90");
            std::size_t width = 3;
            if (eq == std::string_view::npos) {
                eq = line.find('=');
                width = 1;
            }
            if (eq == std::string_view::npos) throw ParseError("equation without '='", offset);
            std::string_view lhs = trim(line.substr(0, eq));
            std::string_view rhs = trim(line.substr(eq + width));
            bool as_list = false;
            if (!lhs.empty() && lhs.front() == '<') {
                NameInterner probe = names;
                try {
                    (void)parse_prelist(lhs, probe);
                    as_list = true;
                } catch (const ParseError&) {
                }
            }
            if (as_list) {
                PreList l = parse_prelist(lhs, names);
                out.insert(Equation(std::move(l), parse_prelist(rhs, names)));
            } else {
                PreType t = parse_pretype(lhs, names);
                out.insert(Equation(std::move(t), parse_pretype(rhs, names)));
            }
        }
        offset = end + 1;
    }
    return out;
}

}  // namespace itype
