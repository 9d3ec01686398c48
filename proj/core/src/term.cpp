#include "itype/term.hpp"

#include <cctype>
#include <map>
#include <unordered_map>
#include <vector>

namespace itype {

struct Term::Node {
    Kind kind;
    std::string name;
    Term left{nullptr};
    Term right{nullptr};
    std::size_t size = 1;
};

Term Term::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->name = std::move(name);
    return Term(std::move(n));
}

Term Term::abs(std::string binder, Term body) {
    if (binder.empty()) throw std::invalid_argument("binder name must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = Kind::abstraction;
    n->name = std::move(binder);
    n->size = 1 + body.size();
    n->left = std::move(body);
    return Term(std::move(n));
}

Term Term::app(Term function, Term argument) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::application;
    n->size = 1 + function.size() + argument.size();
    n->left = std::move(function);
    n->right = std::move(argument);
    return Term(std::move(n));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }

const std::string& Term::name() const {
    if (is_app()) throw std::logic_error("application has no name");
    return node_->name;
}

const Term& Term::body() const {
    if (!is_abs()) throw std::logic_error("not an abstraction");
    return node_->left;
}

const Term& Term::function() const {
    if (!is_app()) throw std::logic_error("not an application");
    return node_->left;
}

const Term& Term::argument() const {
    if (!is_app()) throw std::logic_error("not an application");
    return node_->right;
}

std::size_t Term::size() const noexcept { return node_->size; }

bool operator==(const Term& a, const Term& b) { return alpha_equivalent(a, b); }

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

bool identical(const Term& a, const Term& b) {
    if (a.same_node(b)) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
    case Term::Kind::variable:
        return a.name() == b.name();
    case Term::Kind::abstraction:
        return a.name() == b.name() && identical(a.body(), b.body());
    case Term::Kind::application:
        return identical(a.function(), b.function()) && identical(a.argument(), b.argument());
    }
    return false;
}

namespace {

void write_key(const Term& t, std::vector<std::string>& binders, std::string& out) {
    switch (t.kind()) {
    case Term::Kind::variable: {
        for (std::size_t i = binders.size(); i-- > 0;) {
            if (binders[i] == t.name()) {
                out += '#';
                out += std::to_string(binders.size() - 1 - i);
                out += ' ';
                return;
            }
        }
        out += '$';
        out += t.name();
        out += ' ';
        return;
    }
    case Term::Kind::abstraction:
        out += 'L';
        binders.push_back(t.name());
        write_key(t.body(), binders, out);
        binders.pop_back();
        return;
    case Term::Kind::application:
        out += 'A';
        write_key(t.function(), binders, out);
        write_key(t.argument(), binders, out);
        return;
    }
}

void collect_free(const Term& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
    switch (t.kind()) {
    case Term::Kind::variable:
        if (!bound.contains(t.name())) out.insert(t.name());
        return;
    case Term::Kind::abstraction: {
        auto it = bound.insert(t.name());
        collect_free(t.body(), bound, out);
        bound.erase(it);
        return;
    }
    case Term::Kind::application:
        collect_free(t.function(), bound, out);
        collect_free(t.argument(), bound, out);
        return;
    }
}

void collect_names(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
    case Term::Kind::variable:
        out.insert(t.name());
        return;
    case Term::Kind::abstraction:
        out.insert(t.name());
        collect_names(t.body(), out);
        return;
    case Term::Kind::application:
        collect_names(t.function(), out);
        collect_names(t.argument(), out);
        return;
    }
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
    std::string stem = base;
    while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    while (!stem.empty() && (stem.back() == '\'' || stem.back() == '_') && stem.size() > 1) stem.pop_back();
    for (std::size_t k = 1;; ++k) {
        std::string candidate = stem + std::to_string(k);
        if (used.insert(candidate).second) return candidate;
    }
}

class Hygiene {
public:
    explicit Hygiene(const Term& t) : used_(all_names(t)), taken_(free_vars(t)) {}

    Term run(const Term& t) {
        switch (t.kind()) {
        case Term::Kind::variable: {
            auto it = scope_.find(t.name());
            if (it == scope_.end() || it->second.empty() || it->second.back() == t.name()) return t;
            return Term::var(it->second.back());
        }
        case Term::Kind::abstraction: {
            std::string name = t.name();
            if (!taken_.insert(name).second) name = fresh_name(name, used_), taken_.insert(name);
            auto& stack = scope_[t.name()];
            stack.push_back(name);
            Term body = run(t.body());
            stack.pop_back();
            if (name == t.name() && body.same_node(t.body())) return t;
            return Term::abs(name, body);
        }
        case Term::Kind::application: {
            Term f = run(t.function());
            Term a = run(t.argument());
            if (f.same_node(t.function()) && a.same_node(t.argument())) return t;
            return Term::app(f, a);
        }
        }
        return t;
    }

private:
    std::set<std::string> used_;
    std::set<std::string> taken_;
    std::unordered_map<std::string, std::vector<std::string>> scope_;
};

bool hygienic_walk(const Term& t, const std::set<std::string>& free, std::set<std::string>& binders) {
    switch (t.kind()) {
    case Term::Kind::variable:
        return true;
    case Term::Kind::abstraction:
        if (free.contains(t.name()) || !binders.insert(t.name()).second) return false;
        return hygienic_walk(t.body(), free, binders);
    case Term::Kind::application:
        return hygienic_walk(t.function(), free, binders) && hygienic_walk(t.argument(), free, binders);
    }
    return false;
}

Term subst_raw(const Term& t, const std::string& target, const Term& replacement,
               const std::set<std::string>& replacement_free, std::set<std::string>& used) {
    switch (t.kind()) {
    case Term::Kind::variable:
        return t.name() == target ? replacement : t;
    case Term::Kind::application: {
        Term f = subst_raw(t.function(), target, replacement, replacement_free, used);
        Term a = subst_raw(t.argument(), target, replacement, replacement_free, used);
        if (f.same_node(t.function()) && a.same_node(t.argument())) return t;
        return Term::app(f, a);
    }
    case Term::Kind::abstraction: {
        if (t.name() == target || !occurs_free(t.body(), target)) return t;
        if (!replacement_free.contains(t.name())) {
            return Term::abs(t.name(),
                             subst_raw(t.body(), target, replacement, replacement_free, used));
        }
        std::string renamed = fresh_name(t.name(), used);
        Term body = subst_raw(t.body(), t.name(), Term::var(renamed), {renamed}, used);
        return Term::abs(renamed, subst_raw(body, target, replacement, replacement_free, used));
    }
    }
    return t;
}

}  // namespace

std::string alpha_key(const Term& t) {
    std::string out;
    out.reserve(t.size() * 3);
    std::vector<std::string> binders;
    write_key(t, binders, out);
    return out;
}

bool alpha_equivalent(const Term& a, const Term& b) {
    if (a.same_node(b)) return true;
    if (a.size() != b.size()) return false;
    return alpha_key(a) == alpha_key(b);
}

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    std::multiset<std::string> bound;
    collect_free(t, bound, out);
    return out;
}

bool occurs_free(const Term& t, std::string_view name) {
    switch (t.kind()) {
    case Term::Kind::variable:
        return t.name() == name;
    case Term::Kind::abstraction:
        return t.name() != name && occurs_free(t.body(), name);
    case Term::Kind::application:
        return occurs_free(t.function(), name) || occurs_free(t.argument(), name);
    }
    return false;
}

std::set<std::string> all_names(const Term& t) {
    std::set<std::string> out;
    collect_names(t, out);
    return out;
}

Term make_hygienic(const Term& t) { return Hygiene(t).run(t); }

bool is_hygienic(const Term& t) {
    std::set<std::string> binders;
    return hygienic_walk(t, free_vars(t), binders);
}

Term substitute(const Term& body, std::string_view target, const Term& replacement) {
    std::set<std::string> used = all_names(body);
    for (const auto& n : all_names(replacement)) used.insert(n);
    Term raw = subst_raw(body, std::string(target), replacement, free_vars(replacement), used);
    return make_hygienic(raw);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Term parse() {
        skip_space();
        if (at_end()) throw ParseError("empty term", pos_);
        Term t = parse_expr();
        skip_space();
        if (!at_end()) throw ParseError("unexpected input", pos_);
        return t;
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool at_lambda() const {
        if (at_end()) return false;
        if (src_[pos_] == '\\') return true;
        return src_.substr(pos_, 2) == "\xCE\xBB";  // U+03BB
    }

    static bool ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
    static bool ident_char(char c) { return ident_start(c) || c == '_' || c == '\''; }

    std::string parse_ident() {
        skip_space();
        std::size_t start = pos_;
        if (at_end() || !ident_start(src_[pos_])) throw ParseError("expected identifier", pos_);
        while (!at_end() && ident_char(src_[pos_])) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    // expr := lambda | app
    Term parse_expr() {
        skip_space();
        if (at_lambda()) return parse_lambda();
        return parse_app();
    }

    Term parse_lambda() {
        pos_ += src_[pos_] == '\\' ? 1 : 2;
        std::string binder = parse_ident();
        skip_space();
        if (at_end() || src_[pos_] != '.') throw ParseError("expected '.'", pos_);
        ++pos_;
        return Term::abs(std::move(binder), parse_expr());
    }

    // app := atom atom* [lambda]
    Term parse_app() {
        Term head = parse_atom();
        for (;;) {
            skip_space();
            if (at_end() || src_[pos_] == ')') return head;
            if (at_lambda()) return Term::app(std::move(head), parse_lambda());
            head = Term::app(std::move(head), parse_atom());
        }
    }

    Term parse_atom() {
        skip_space();
        if (at_end()) throw ParseError("unexpected end of input", pos_);
        if (src_[pos_] == '(') {
            ++pos_;
            Term inner = parse_expr();
            skip_space();
            if (at_end() || src_[pos_] != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (ident_start(src_[pos_])) return Term::var(parse_ident());
        throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

void print(const Term& t, bool ascii, std::string& out) {
    switch (t.kind()) {
    case Term::Kind::variable:
        out += t.name();
        return;
    case Term::Kind::abstraction:
        out += ascii ? "\\" : "\xCE\xBB";
        out += t.name();
        out += '.';
        print(t.body(), ascii, out);
        return;
    case Term::Kind::application: {
        const Term& f = t.function();
        const Term& a = t.argument();
        if (f.is_abs()) {
            out += '(';
            print(f, ascii, out);
            out += ')';
        } else {
            print(f, ascii, out);
        }
        out += ' ';
        if (a.is_var()) {
            print(a, ascii, out);
        } else {
            out += '(';
            print(a, ascii, out);
            out += ')';
        }
        return;
    }
    }
}

}  // namespace

Term parse_term(std::string_view source) { return make_hygienic(Parser(source).parse()); }

std::string to_string(const Term& t, bool ascii) {
    std::string out;
    print(t, ascii, out);
    return out;
}

Term church_numeral(unsigned n) {
    Term body = Term::var("x");
    for (unsigned i = 0; i < n; ++i) body = Term::app(Term::var("f"), body);
    return Term::abs("f", Term::abs("x", body));
}

}  // namespace itype
