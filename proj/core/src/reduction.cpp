#include "itype/reduction.hpp"

#include <unordered_map>

namespace itype {

namespace {

bool is_redex(const Term& t) { return t.is_app() && t.function().is_abs(); }

RedexKind kind_of(const Term& redex) {
    const Term& lam = redex.function();
    return occurs_free(lam.body(), lam.name()) ? RedexKind::i_redex : RedexKind::k_redex;
}

void collect_redexes(const Term& t, TermPath& path, std::vector<RedexOccurrence>& out) {
    switch (t.kind()) {
    case Term::Kind::variable:
        return;
    case Term::Kind::abstraction:
        path.push_back(PathStep::body);
        collect_redexes(t.body(), path, out);
        path.pop_back();
        return;
    case Term::Kind::application:
        if (is_redex(t)) out.push_back({path, kind_of(t)});
        path.push_back(PathStep::function);
        collect_redexes(t.function(), path, out);
        path.back() = PathStep::argument;
        collect_redexes(t.argument(), path, out);
        path.pop_back();
        return;
    }
}

bool find_first(const Term& t, TermPath& path) {
    switch (t.kind()) {
    case Term::Kind::variable:
        return false;
    case Term::Kind::abstraction:
        path.push_back(PathStep::body);
        if (find_first(t.body(), path)) return true;
        path.pop_back();
        return false;
    case Term::Kind::application:
        if (is_redex(t)) return true;
        path.push_back(PathStep::function);
        if (find_first(t.function(), path)) return true;
        path.back() = PathStep::argument;
        if (find_first(t.argument(), path)) return true;
        path.pop_back();
        return false;
    }
    return false;
}

// Contraction of a redex without the global hygiene pass.
Term contract(const Term& redex) {
    const Term& lam = redex.function();
    if (!occurs_free(lam.body(), lam.name())) return lam.body();
    return substitute(lam.body(), lam.name(), redex.argument());
}

bool is_neutral_nf(const Term& t);

bool nf(const Term& t) {
    if (t.is_abs()) return nf(t.body());
    return is_neutral_nf(t);
}

// x K1 ... Kn with every Ki normal.
bool is_neutral_nf(const Term& t) {
    if (t.is_var()) return true;
    if (t.is_abs()) return false;
    return is_neutral_nf(t.function()) && nf(t.argument());
}

}  // namespace

const Term& subterm_at(const Term& t, const TermPath& path) {
    const Term* cur = &t;
    for (PathStep step : path) {
        switch (step) {
        case PathStep::body:
            if (!cur->is_abs()) throw InvalidPath("path selects body of a non-abstraction");
            cur = &cur->body();
            break;
        case PathStep::function:
            if (!cur->is_app()) throw InvalidPath("path selects function of a non-application");
            cur = &cur->function();
            break;
        case PathStep::argument:
            if (!cur->is_app()) throw InvalidPath("path selects argument of a non-application");
            cur = &cur->argument();
            break;
        }
    }
    return *cur;
}

namespace {

Term replace_from(const Term& t, const TermPath& path, std::size_t i, const Term& replacement) {
    if (i == path.size()) return replacement;
    switch (path[i]) {
    case PathStep::body:
        if (!t.is_abs()) throw InvalidPath("path selects body of a non-abstraction");
        return Term::abs(t.name(), replace_from(t.body(), path, i + 1, replacement));
    case PathStep::function:
        if (!t.is_app()) throw InvalidPath("path selects function of a non-application");
        return Term::app(replace_from(t.function(), path, i + 1, replacement), t.argument());
    case PathStep::argument:
        if (!t.is_app()) throw InvalidPath("path selects argument of a non-application");
        return Term::app(t.function(), replace_from(t.argument(), path, i + 1, replacement));
    }
    return t;
}

}  // namespace

Term replace_at(const Term& t, const TermPath& path, const Term& replacement) {
    return replace_from(t, path, 0, replacement);
}

std::string to_string(const TermPath& path) {
    std::string out = "/";
    for (PathStep s : path) {
        out += s == PathStep::body ? "b" : s == PathStep::function ? "f" : "a";
    }
    return out;
}

std::vector<RedexOccurrence> find_redexes(const Term& t) {
    std::vector<RedexOccurrence> out;
    TermPath path;
    collect_redexes(t, path, out);
    return out;
}

std::optional<RedexOccurrence> leftmost_outermost_redex(const Term& t) {
    TermPath path;
    if (!find_first(t, path)) return std::nullopt;
    return RedexOccurrence{path, kind_of(subterm_at(t, path))};
}

Term beta_step(const Term& t, const RedexOccurrence& r) {
    const Term& redex = subterm_at(t, r.path);
    if (!is_redex(redex)) throw InvalidPath("path " + to_string(r.path) + " does not address a redex");
    return make_hygienic(replace_at(t, r.path, contract(redex)));
}

bool is_normal_form(const Term& t) { return nf(t); }

bool is_head_normal_form(const Term& t) {
    const Term* cur = &t;
    while (cur->is_abs()) cur = &cur->body();
    while (cur->is_app()) cur = &cur->function();
    return cur->is_var();
}

Term f_infinity_step(const Term& t) {
    auto r = leftmost_outermost_redex(t);
    if (!r) return t;
    const Term& redex = subterm_at(t, r->path);
    const Term& lam = redex.function();
    if (r->kind == RedexKind::i_redex) {
        return make_hygienic(replace_at(t, r->path, contract(redex)));
    }
    if (is_normal_form(redex.argument())) return replace_at(t, r->path, lam.body());
    TermPath arg_path = r->path;
    arg_path.push_back(PathStep::argument);
    return make_hygienic(replace_at(t, arg_path, f_infinity_step(redex.argument())));
}

Term leftmost_outermost_step(const Term& t) {
    auto r = leftmost_outermost_redex(t);
    if (!r) return t;
    return beta_step(t, *r);
}

Term reduction_step(const Term& t, Strategy strategy) {
    return strategy == Strategy::f_infinity ? f_infinity_step(t) : leftmost_outermost_step(t);
}

NormalFormResult reduce_to_nf(const Term& t, std::size_t fuel, Strategy strategy) {
    NormalFormResult result{false, t, 0};
    while (!is_normal_form(result.term)) {
        if (result.steps == fuel) return result;
        result.term = reduction_step(result.term, strategy);
        ++result.steps;
    }
    result.reached = true;
    return result;
}

std::string to_string(SnVerdict v) {
    switch (v) {
    case SnVerdict::strongly_normalizing:
        return "SN";
    case SnVerdict::not_strongly_normalizing:
        return "not-SN";
    case SnVerdict::budget_exceeded:
        return "budget-exceeded";
    }
    return "?";
}

std::vector<Term> one_step_reducts(const Term& t) {
    std::vector<Term> out;
    for (const auto& r : find_redexes(t)) out.push_back(beta_step(t, r));
    return out;
}

SnVerdict is_strongly_normalizing_oracle(const Term& t, std::size_t node_budget, std::size_t max_term_size) {
    if (node_budget == 0) throw std::invalid_argument("node_budget must be at least 1");
    enum class Mark : std::uint8_t { on_path, finished };
    std::unordered_map<std::string, Mark> marks;

    struct Frame {
        std::string key;
        std::vector<Term> successors;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    auto push = [&](const Term& term, std::string key) {
        marks.emplace(key, Mark::on_path);
        stack.push_back({std::move(key), one_step_reducts(term), 0});
    };
    push(t, alpha_key(t));

    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next == top.successors.size()) {
            marks[top.key] = Mark::finished;
            stack.pop_back();
            continue;
        }
        Term succ = top.successors[top.next++];
        std::string key = alpha_key(succ);
        auto it = marks.find(key);
        if (it != marks.end()) {
            if (it->second == Mark::on_path) return SnVerdict::not_strongly_normalizing;
            continue;
        }
        if (marks.size() >= node_budget || succ.size() > max_term_size) return SnVerdict::budget_exceeded;
        push(succ, std::move(key));
    }
    return SnVerdict::strongly_normalizing;
}

}  // namespace itype
