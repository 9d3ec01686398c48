#include "itype/pseudo.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace itype {

std::string to_string(Mode m) { return m == Mode::weak ? "weak" : "strong"; }

std::string to_string(Rule r) {
    switch (r) {
    case Rule::var:
        return "var";
    case Rule::abs:
        return "abs";
    case Rule::abs_i:
        return "abs-I";
    case Rule::abs_k:
        return "abs-K";
    case Rule::many:
        return "many";
    case Rule::app:
        return "app";
    }
    return "?";
}

std::optional<Rule> rule_from_string(std::string_view s) {
    for (Rule r : {Rule::var, Rule::abs, Rule::abs_i, Rule::abs_k, Rule::many, Rule::app}) {
        if (to_string(r) == s) return r;
    }
    return std::nullopt;
}

PdNodePtr make_pd_node(Rule rule, const Term& subject, std::optional<PreType> own, std::vector<PdNodePtr> children,
                       std::optional<PreType> k_domain) {
    auto n = std::make_shared<PdNode>(PdNode{rule, subject, PreEnv{}, PreList{}, {}, std::nullopt, std::nullopt});
    auto need_own = [&]() -> const PreType& {
        if (!own) throw std::invalid_argument(to_string(rule) + " node needs its conclusion type");
        return *own;
    };
    auto need_children = [&](std::size_t k) {
        if (children.size() != k) throw std::invalid_argument(to_string(rule) + " node has the wrong arity");
    };
    switch (rule) {
    case Rule::var:
        need_children(0);
        if (!subject.is_var()) throw std::invalid_argument("var node over a non-variable");
        n->env = PreEnv::single(subject.name(), PreList{need_own()});
        n->conclusion = need_own();
        break;
    case Rule::abs:
    case Rule::abs_i: {
        need_children(1);
        const PdNode& c = *children[0];
        n->env = c.env.without(subject.name());
        n->conclusion = need_own();
        n->equation = Equation(need_own(), PreType::arrow(c.env(subject.name()), c.type()));
        break;
    }
    case Rule::abs_k: {
        need_children(1);
        if (!k_domain) throw std::invalid_argument("abs-K node needs its domain variable");
        const PdNode& c = *children[0];
        n->env = c.env;
        n->conclusion = need_own();
        n->equation = Equation(need_own(), PreType::arrow(PreList{*k_domain}, c.type()));
        n->k_domain = k_domain;
        break;
    }
    case Rule::many: {
        PreList l;
        for (const auto& c : children) {
            n->env = n->env.concat(c->env);
            l.push_back(c->type());
        }
        n->conclusion = std::move(l);
        break;
    }
    case Rule::app: {
        need_children(2);
        const PdNode& f = *children[0];
        const PdNode& a = *children[1];
        n->env = f.env.concat(a.env);
        n->conclusion = need_own();
        n->equation = Equation(f.type(), PreType::arrow(a.list(), need_own()));
        break;
    }
    }
    n->children = std::move(children);
    return n;
}

PdNodePtr rebuild(const PdNode& node, std::vector<PdNodePtr> children) {
    std::optional<PreType> own;
    if (node.rule != Rule::many) own = node.type();
    return make_pd_node(node.rule, node.subject, own, std::move(children), node.k_domain);
}

namespace {

std::size_t count_nodes(const PdNode& n) {
    std::size_t c = 1;
    for (const auto& ch : n.children) c += count_nodes(*ch);
    return c;
}

PdNodePtr build_min(const Term& t, Mode mode, VarSupply& fresh);

PdNodePtr build_many(const Term& t, Mode mode, VarSupply& fresh, std::size_t copies) {
    std::vector<PdNodePtr> premises;
    for (std::size_t i = 0; i < copies; ++i) premises.push_back(build_min(t, mode, fresh));
    return make_pd_node(Rule::many, t, std::nullopt, std::move(premises));
}

PdNodePtr build_min(const Term& t, Mode mode, VarSupply& fresh) {
    switch (t.kind()) {
    case Term::Kind::variable:
        return make_pd_node(Rule::var, t, PreType::var(fresh.fresh()), {});
    case Term::Kind::abstraction: {
        PdNodePtr body = build_min(t.body(), mode, fresh);
        if (mode == Mode::weak) return make_pd_node(Rule::abs, t, PreType::var(fresh.fresh()), {body});
        if (body->env.in_domain(t.name())) return make_pd_node(Rule::abs_i, t, PreType::var(fresh.fresh()), {body});
        PreType b = PreType::var(fresh.fresh());
        PreType c = PreType::var(fresh.fresh());
        return make_pd_node(Rule::abs_k, t, c, {body}, b);
    }
    case Term::Kind::application: {
        PdNodePtr f = build_min(t.function(), mode, fresh);
        PdNodePtr a = build_many(t.argument(), mode, fresh, 1);
        return make_pd_node(Rule::app, t, PreType::var(fresh.fresh()), {f, a});
    }
    }
    throw std::logic_error("unreachable");
}

void collect_equations(const PdNode& n, EquationSet& out) {
    for (const auto& c : n.children) collect_equations(*c, out);
    if (n.equation) out.insert(*n.equation);
}

void find_many_rec(const PdNode& n, const PreList& anchor, std::vector<std::size_t>& path,
                   std::vector<std::vector<std::size_t>>& hits) {
    if (n.rule == Rule::many && n.list() == anchor) hits.push_back(path);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        path.push_back(i);
        find_many_rec(*n.children[i], anchor, path, hits);
        path.pop_back();
    }
}

PdNodePtr replace_along(const PdNodePtr& n, const std::vector<std::size_t>& path, std::size_t depth,
                        const std::function<PdNodePtr(const PdNode&)>& change) {
    if (depth == path.size()) return change(*n);
    std::vector<PdNodePtr> children = n->children;
    children[path[depth]] = replace_along(children[path[depth]], path, depth + 1, change);
    return rebuild(*n, std::move(children));
}

// A fresh copy of PD_min(t) whose root concludes `target`.
PdNodePtr copy_concluding(const Term& t, Mode mode, VarSupply& fresh, const PreType& target) {
    PdNodePtr copy = build_min(t, mode, fresh);
    PreSubst rename;
    rename.bind(copy->type().var_id(), target);
    return apply(rename, PseudoDerivation(copy, mode, fresh.peek())).root_ptr();
}

PseudoDerivation resize(const PseudoDerivation& pd, const PreList& anchor, std::size_t n, bool grow, bool refined) {
    if (anchor.empty()) throw std::invalid_argument("anchor list must be nonempty");
    if (n == 0) throw std::invalid_argument("edit size must be at least 1");
    auto path = find_many(pd, anchor);
    if (!path) return pd;
    VarSupply fresh(pd.next_fresh());
    Mode mode = pd.mode();
    PdNodePtr root = replace_along(pd.root_ptr(), *path, 0, [&](const PdNode& many) {
        const std::size_t m = many.children.size();
        std::vector<PdNodePtr> premises;
        if (grow && refined) {
            premises = many.children;
            for (std::size_t i = 0; i < n; ++i) premises.push_back(build_min(many.subject, mode, fresh));
        } else {
            const std::size_t keep = grow ? m : (m > n ? m - n : 0);
            const std::size_t total = grow ? m + n : keep;
            for (std::size_t i = 0; i < total; ++i) {
                if (i < keep) {
                    premises.push_back(copy_concluding(many.subject, mode, fresh, many.list()[i]));
                } else {
                    premises.push_back(build_min(many.subject, mode, fresh));
                }
            }
        }
        return make_pd_node(Rule::many, many.subject, std::nullopt, std::move(premises));
    });
    return PseudoDerivation(root, mode, fresh.peek());
}

}  // namespace

std::size_t PseudoDerivation::node_count() const { return count_nodes(*root_); }

PseudoDerivation minimal_pd(const Term& t, Mode mode, VarId first_fresh) {
    VarSupply fresh(first_fresh);
    PdNodePtr root = build_min(t, mode, fresh);
    return PseudoDerivation(root, mode, fresh.peek());
}

EquationSet equations_of(const PdNode& node) {
    EquationSet out;
    collect_equations(node, out);
    return out;
}

EquationSet equations_of(const PseudoDerivation& pd) { return equations_of(pd.root()); }

std::string to_string(const StructuralEdit& e, bool ascii) {
    return std::string(e.kind == EditKind::expansion ? "expand " : "erase ") + to_string(e.anchor, ascii) + " by " +
           std::to_string(e.delta);
}

std::optional<std::vector<std::size_t>> find_many(const PseudoDerivation& pd, const PreList& anchor) {
    std::vector<std::vector<std::size_t>> hits;
    std::vector<std::size_t> path;
    find_many_rec(pd.root(), anchor, path, hits);
    if (hits.empty()) return std::nullopt;
    if (hits.size() > 1) throw AmbiguousAnchor("anchor " + to_string(anchor) + " concludes several many-nodes");
    return hits.front();
}

PseudoDerivation expand(const PseudoDerivation& pd, const PreList& anchor, std::size_t n, bool refined) {
    return resize(pd, anchor, n, true, refined);
}

PseudoDerivation erase(const PseudoDerivation& pd, const PreList& anchor, std::size_t n) {
    if (pd.mode() == Mode::strong) throw std::invalid_argument("erasure is not defined for strong pseudo-derivations");
    return resize(pd, anchor, n, false, false);
}

PseudoDerivation apply_edit(const PseudoDerivation& pd, const StructuralEdit& e, bool refined) {
    if (e.kind == EditKind::expansion) return expand(pd, e.anchor, e.delta, refined);
    return erase(pd, e.anchor, e.delta);
}

PseudoDerivation apply_edits(const PseudoDerivation& pd, const std::vector<StructuralEdit>& edits, bool refined) {
    PseudoDerivation cur = pd;
    for (const auto& e : edits) cur = apply_edit(cur, e, refined);
    return cur;
}

std::vector<StructuralEdit> reconstruct_edits(const PseudoDerivation& target, VarId first_fresh) {
    std::vector<StructuralEdit> edits;
    PseudoDerivation cur = minimal_pd(target.subject(), target.mode(), first_fresh);
    // Walk both trees in lockstep; `cur` is re-read through the path after
    // each edit because edits rebuild the spine above the edited node.
    std::function<void(const PdNode&, std::vector<std::size_t>&)> walk = [&](const PdNode& t,
                                                                          std::vector<std::size_t>& path) {
        if (t.rule == Rule::many) {
            const PdNode* c = cur.root_ptr().get();
            for (std::size_t i : path) c = c->children[i].get();
            const std::size_t want = t.children.size();
            const std::size_t have = c->children.size();
            if (want > have) {
                StructuralEdit e{EditKind::expansion, c->list(), want - have};
                cur = apply_edit(cur, e);
                edits.push_back(std::move(e));
            } else if (want < have) {
                StructuralEdit e{EditKind::erasure, c->list(), have - want};
                cur = apply_edit(cur, e);
                edits.push_back(std::move(e));
            }
        }
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            path.push_back(i);
            walk(*t.children[i], path);
            path.pop_back();
        }
    };
    std::vector<std::size_t> path;
    walk(target.root(), path);
    return edits;
}

// ---------------------------------------------------------------------------
// Structural validation.

namespace {

void subtree_vars(const PdNode& n, std::set<VarId>& out) {
    for (const auto& [x, l] : n.env.entries()) collect_vars(l, out);
    if (n.rule == Rule::many) {
        collect_vars(n.list(), out);
    } else {
        collect_vars(n.type(), out);
    }
    if (n.equation) collect_vars(*n.equation, out);
    for (const auto& c : n.children) subtree_vars(*c, out);
}

std::string path_string(const std::vector<std::size_t>& path) {
    std::string out = "/";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '/';
        out += std::to_string(path[i]);
    }
    return out;
}

void check_node(const PdNode& n, Mode mode, std::vector<std::size_t>& path, std::vector<std::string>& out) {
    auto report = [&](const std::string& what) { out.push_back(path_string(path) + ": " + what); };
    const std::size_t reported_before = out.size();
    const bool is_many = n.rule == Rule::many;
    if (is_many != std::holds_alternative<PreList>(n.conclusion)) {
        report("conclusion kind does not match rule " + to_string(n.rule));
        return;
    }
    for (const auto& c : n.children) {
        if (!c) {
            report("missing child");
            return;
        }
    }
    // Rule availability and subject shape.
    switch (n.rule) {
    case Rule::var:
        if (!n.subject.is_var()) report("var rule over a non-variable");
        if (!n.children.empty()) report("var rule with premises");
        break;
    case Rule::abs:
    case Rule::abs_i:
    case Rule::abs_k:
        if (mode == Mode::weak && n.rule != Rule::abs) report(to_string(n.rule) + " in a weak pseudo-derivation");
        if (mode == Mode::strong && n.rule == Rule::abs) report("abs in a strong pseudo-derivation");
        if (!n.subject.is_abs()) {
            report("abstraction rule over a non-abstraction");
        } else if (n.children.size() != 1) {
            report("abstraction rule needs one premise");
        } else if (!identical(n.children[0]->subject, n.subject.body())) {
            report("premise subject is not the body");
        }
        break;
    case Rule::many:
        if (mode == Mode::strong && n.children.empty()) report("many without premises in strong mode");
        for (const auto& c : n.children) {
            if (c->rule == Rule::many) report("many directly above many");
            if (!identical(c->subject, n.subject)) report("premise subject differs from many subject");
        }
        break;
    case Rule::app:
        if (!n.subject.is_app()) {
            report("app rule over a non-application");
        } else if (n.children.size() != 2) {
            report("app rule needs two premises");
        } else {
            if (!identical(n.children[0]->subject, n.subject.function())) report("left premise is not the function");
            if (!identical(n.children[1]->subject, n.subject.argument())) report("right premise is not the argument");
            if (n.children[1]->rule != Rule::many) report("right premise of app is not a many-node");
            if (n.children[0]->rule == Rule::many) report("left premise of app is a many-node");
        }
        break;
    }
    for (const auto& c : n.children) {
        if (n.rule != Rule::many && c->rule == Rule::many && n.rule != Rule::app) report("unexpected many premise");
    }
    if (out.size() != reported_before) return;

    // Environment, conclusion and equation against the rule.
    if (n.rule != Rule::many && !n.type().is_var()) report("conclusion is not a variable");
    if (n.rule == Rule::abs_k) {
        if (!n.k_domain || !n.k_domain->is_var()) report("abs-K without a domain variable");
        if (n.children[0]->env.in_domain(n.subject.name())) report("abs-K binder occurs in the premise environment");
    }
    if (n.rule == Rule::abs_i && !n.children[0]->env.in_domain(n.subject.name())) {
        report("abs-I binder absent from the premise environment");
    }
    PdNodePtr expected;
    try {
        expected = rebuild(n, n.children);
    } catch (const std::exception& e) {
        report(std::string("cannot apply the rule: ") + e.what());
        return;
    }
    if (!(expected->env == n.env)) report("environment is not the one the rule prescribes");
    if (expected->conclusion != n.conclusion) report("conclusion is not the one the rule prescribes");
    if (expected->equation != n.equation) report("equation is not the one the rule prescribes");

    // Disjointness of sibling subtrees, and freshness of introduced variables.
    if (n.children.size() >= 2) {
        std::vector<std::set<VarId>> sets;
        for (const auto& c : n.children) {
            sets.emplace_back();
            subtree_vars(*c, sets.back());
        }
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                for (VarId v : sets[i]) {
                    if (sets[j].contains(v)) {
                        report("premises " + std::to_string(i) + " and " + std::to_string(j) + " share " +
                               var_name(v));
                        break;
                    }
                }
            }
        }
    }
    if (n.rule == Rule::abs || n.rule == Rule::abs_i || n.rule == Rule::abs_k || n.rule == Rule::app) {
        std::set<VarId> below;
        for (const auto& c : n.children) subtree_vars(*c, below);
        if (below.contains(n.type().var_id())) report("conclusion variable is not fresh");
        if (n.rule == Rule::abs_k && n.k_domain && n.k_domain->is_var()) {
            if (below.contains(n.k_domain->var_id()) || n.k_domain->var_id() == n.type().var_id()) {
                report("abs-K domain variable is not fresh");
            }
        }
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        path.push_back(i);
        check_node(*n.children[i], mode, path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<std::string> structural_violations(const PseudoDerivation& pd) {
    std::vector<std::string> out;
    std::vector<std::size_t> path;
    check_node(pd.root(), pd.mode(), path, out);
    std::set<VarId> all;
    subtree_vars(pd.root(), all);
    if (!all.empty() && *all.rbegin() >= pd.next_fresh()) out.push_back("/: variable at or above the fresh counter");
    return out;
}

// ---------------------------------------------------------------------------
// Canonical text.

namespace {

void render_node(const PdNode& n, CanonicalRenaming& ren, const VarNamer& namer, std::string& out, bool ascii) {
    // Visit in printing order so numbering follows first occurrence.
    for (const auto& [x, l] : n.env.entries()) ren.visit(l);
    if (n.rule == Rule::many) {
        ren.visit(n.list());
    } else {
        ren.visit(n.type());
    }
    if (n.k_domain) ren.visit(*n.k_domain);
    if (n.equation) {
        if (n.equation->is_type()) {
            ren.visit(n.equation->as_type().lhs);
            ren.visit(n.equation->as_type().rhs);
        }
    }
    out += '(';
    out += judgement(n, ascii, namer);
    if (n.k_domain) out += " k:" + to_string(*n.k_domain, ascii, namer);
    if (n.equation) out += " {" + to_string(*n.equation, ascii, namer) + "}";
    for (const auto& c : n.children) render_node(*c, ren, namer, out, ascii);
    out += ')';
}

PdNodePtr sort_premises(const PdNodePtr& n, std::map<const PdNode*, std::string>& shapes);

std::string shape_of(const PdNodePtr& n, std::map<const PdNode*, std::string>& shapes) {
    auto it = shapes.find(n.get());
    if (it != shapes.end()) return it->second;
    CanonicalRenaming ren;
    std::string out;
    render_node(*n, ren, [&ren](VarId v) { return var_name(ren(v)); }, out, true);
    shapes.emplace(n.get(), out);
    return out;
}

PdNodePtr sort_premises(const PdNodePtr& n, std::map<const PdNode*, std::string>& shapes) {
    std::vector<PdNodePtr> children;
    for (const auto& c : n->children) children.push_back(sort_premises(c, shapes));
    if (n->rule == Rule::many) {
        std::vector<std::pair<std::string, PdNodePtr>> keyed;
        for (auto& c : children) keyed.emplace_back(shape_of(c, shapes), c);
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        children.clear();
        for (auto& [k, c] : keyed) children.push_back(c);
    }
    return rebuild(*n, std::move(children));
}

}  // namespace

std::string canonical_form(const PseudoDerivation& pd, bool permutation_blind) {
    PdNodePtr root = pd.root_ptr();
    if (permutation_blind) {
        std::map<const PdNode*, std::string> shapes;
        root = sort_premises(root, shapes);
    }
    CanonicalRenaming ren;
    std::string out = to_string(pd.mode()) + " ";
    render_node(*root, ren, [&ren](VarId v) { return var_name(ren(v)); }, out, true);
    return out;
}

CanonicalRenaming canonical_renaming(const PseudoDerivation& pd) {
    CanonicalRenaming ren;
    std::string sink;
    render_node(pd.root(), ren, [&ren](VarId v) { return var_name(ren(v)); }, sink, true);
    return ren;
}

namespace {

PdNodePtr apply_node(const PreSubst& s, const PdNode& n) {
    auto out = std::make_shared<PdNode>(n);
    out->env = apply(s, n.env);
    if (n.rule == Rule::many) {
        out->conclusion = apply(s, n.list());
    } else {
        out->conclusion = apply(s, n.type());
    }
    if (n.equation) out->equation = apply(s, *n.equation);
    if (n.k_domain) out->k_domain = apply(s, *n.k_domain);
    for (auto& c : out->children) c = apply_node(s, *c);
    return out;
}

void collect_many(const PdNode& n, std::vector<PreList>& out) {
    if (n.rule == Rule::many) out.push_back(n.list());
    for (const auto& c : n.children) collect_many(*c, out);
}

void render_tree(const PdNode& n, std::size_t depth, bool ascii, std::string& out) {
    out += std::string(2 * depth, ' ');
    out += to_string(n.rule) + ": " + judgement(n, ascii);
    if (n.equation) out += "    [" + to_string(*n.equation, ascii) + "]";
    out += '\n';
    for (const auto& c : n.children) render_tree(*c, depth + 1, ascii, out);
}

}  // namespace

PseudoDerivation apply(const PreSubst& s, const PseudoDerivation& pd) {
    return PseudoDerivation(apply_node(s, pd.root()), pd.mode(), pd.next_fresh());
}

std::vector<PreList> many_conclusions(const PseudoDerivation& pd) {
    std::vector<PreList> out;
    collect_many(pd.root(), out);
    return out;
}

std::string judgement(const PdNode& n, bool ascii, const VarNamer& namer) {
    std::string out = to_string(n.env, ascii, namer);
    out += out.empty() ? "" : " ";
    out += ascii ? "|- " : "\xE2\x8A\xA2 ";
    out += to_string(n.subject, ascii) + " : ";
    if (n.rule == Rule::many) {
        out += to_string(n.list(), ascii, namer);
    } else {
        out += to_string(n.type(), ascii, namer);
    }
    return out;
}

std::string to_string(const PseudoDerivation& pd, bool ascii) {
    std::string out;
    render_tree(pd.root(), 0, ascii, out);
    return out;
}

}  // namespace itype
