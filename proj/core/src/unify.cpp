#include "itype/unify.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace itype {

FormReport classify(const EquationSet& s) {
    FormReport r;
    bool solved = true;
    std::set<VarId> lhs_vars;
    std::set<VarId> rhs_vars;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Equation& e = s[i];
        if (e.is_blocked()) r.blocked.push_back(i);
        if (e.is_circular()) r.circular.push_back(i);
        if (e.is_list() || !e.as_type().lhs.is_var()) {
            solved = false;
            continue;
        }
        if (!lhs_vars.insert(e.as_type().lhs.var_id()).second) solved = false;
        collect_vars(e.as_type().rhs, rhs_vars);
    }
    if (solved) {
        for (VarId v : lhs_vars) {
            if (rhs_vars.contains(v)) {
                solved = false;
                break;
            }
        }
    }
    r.solved = solved;
    return r;
}

std::string describe(const FormReport& r) {
    if (r.solved) return "solved";
    std::string out;
    if (r.unsolvable()) out = "unsolvable";
    if (r.is_blocked()) out += out.empty() ? "blocked" : "+blocked";
    return out.empty() ? "other" : out;
}

std::string to_string(UnifyRule r) {
    switch (r) {
    case UnifyRule::erase:
        return "erase";
    case UnifyRule::swap:
        return "swap";
    case UnifyRule::arrow:
        return "arrow";
    case UnifyRule::list:
        return "list";
    case UnifyRule::subs:
        return "subs";
    case UnifyRule::subs_out:
        return "subs-out";
    }
    return "?";
}

namespace {

PreType subst_all(const PreType& t, VarId a, const PreType& by);

PreList subst_all(const PreList& l, VarId a, const PreType& by) {
    PreList out;
    out.reserve(l.size());
    for (const auto& t : l) out.push_back(subst_all(t, a, by));
    return out;
}

PreType subst_all(const PreType& t, VarId a, const PreType& by) {
    if (t.is_var()) return t.var_id() == a ? by : t;
    if (!occurs(a, t)) return t;
    return PreType::arrow(subst_all(t.domain(), a, by), subst_all(t.codomain(), a, by));
}

// Only the occurrence at the end of the codomain spine is outside every list.
PreType subst_tail(const PreType& t, VarId a, const PreType& by) {
    if (t.is_var()) return t.var_id() == a ? by : t;
    return PreType::arrow(t.domain(), subst_tail(t.codomain(), a, by));
}

VarId spine_tail(const PreType& t) {
    const PreType* cur = &t;
    while (cur->is_arrow()) cur = &cur->codomain();
    return cur->var_id();
}

void count_occurrences(const PreType& t, std::unordered_map<VarId, std::size_t>& counts) {
    if (t.is_var()) {
        ++counts[t.var_id()];
        return;
    }
    for (const auto& d : t.domain()) count_occurrences(d, counts);
    count_occurrences(t.codomain(), counts);
}

struct Occurrences {
    std::unordered_map<VarId, std::size_t> all;
    std::unordered_map<VarId, std::size_t> outside;
};

Occurrences count(const EquationSet& s) {
    Occurrences occ;
    for (const auto& e : s) {
        if (e.is_type()) {
            count_occurrences(e.as_type().lhs, occ.all);
            count_occurrences(e.as_type().rhs, occ.all);
            ++occ.outside[spine_tail(e.as_type().lhs)];
            ++occ.outside[spine_tail(e.as_type().rhs)];
        } else {
            for (const auto& t : e.as_list().lhs) count_occurrences(t, occ.all);
            for (const auto& t : e.as_list().rhs) count_occurrences(t, occ.all);
        }
    }
    return occ;
}

std::size_t lookup(const std::unordered_map<VarId, std::size_t>& m, VarId v) {
    auto it = m.find(v);
    return it == m.end() ? 0 : it->second;
}

bool applicable(UnifyRule rule, const Equation& e, const Occurrences& occ) {
    switch (rule) {
    case UnifyRule::erase:
        return e.is_type() && e.as_type().lhs == e.as_type().rhs;
    case UnifyRule::swap:
        return e.is_type() && e.as_type().lhs.is_arrow() && e.as_type().rhs.is_var();
    case UnifyRule::arrow:
        return e.is_type() && e.as_type().lhs.is_arrow() && e.as_type().rhs.is_arrow();
    case UnifyRule::list:
        return e.is_list() && e.as_list().lhs.size() == e.as_list().rhs.size();
    case UnifyRule::subs:
    case UnifyRule::subs_out: {
        if (!e.is_type() || !e.as_type().lhs.is_var()) return false;
        VarId a = e.as_type().lhs.var_id();
        if (occurs(a, e.as_type().rhs)) return false;
        // The equation itself contributes exactly one occurrence of a, which
        // is outside any list.
        if (rule == UnifyRule::subs) return lookup(occ.all, a) > 1;
        return lookup(occ.outside, a) > 1;
    }
    }
    return false;
}

EquationSet fire(const EquationSet& s, UnifyRule rule, std::size_t i) {
    std::vector<Equation> out;
    out.reserve(s.size() + 1);
    const Equation& e = s[i];
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (j != i) {
            if (rule == UnifyRule::subs || rule == UnifyRule::subs_out) {
                VarId a = e.as_type().lhs.var_id();
                const PreType& by = e.as_type().rhs;
                const Equation& f = s[j];
                if (rule == UnifyRule::subs) {
                    if (f.is_type()) {
                        out.emplace_back(subst_all(f.as_type().lhs, a, by), subst_all(f.as_type().rhs, a, by));
                    } else {
                        out.emplace_back(subst_all(f.as_list().lhs, a, by), subst_all(f.as_list().rhs, a, by));
                    }
                } else if (f.is_type()) {
                    out.emplace_back(subst_tail(f.as_type().lhs, a, by), subst_tail(f.as_type().rhs, a, by));
                } else {
                    out.push_back(f);
                }
            } else {
                out.push_back(s[j]);
            }
            continue;
        }
        switch (rule) {
        case UnifyRule::erase:
            break;
        case UnifyRule::swap:
            out.emplace_back(e.as_type().rhs, e.as_type().lhs);
            break;
        case UnifyRule::arrow:
            out.emplace_back(e.as_type().lhs.domain(), e.as_type().rhs.domain());
            out.emplace_back(e.as_type().lhs.codomain(), e.as_type().rhs.codomain());
            break;
        case UnifyRule::list:
            for (std::size_t k = 0; k < e.as_list().lhs.size(); ++k) {
                out.emplace_back(e.as_list().lhs[k], e.as_list().rhs[k]);
            }
            break;
        case UnifyRule::subs:
        case UnifyRule::subs_out:
            out.push_back(e);
            break;
        }
    }
    return EquationSet(out);
}

UnifyRule substitution_rule(Relation rel) { return rel == Relation::u ? UnifyRule::subs : UnifyRule::subs_out; }

}  // namespace

std::optional<StepResult> step(const EquationSet& s, Relation rel) {
    const UnifyRule order[] = {UnifyRule::erase, UnifyRule::swap, UnifyRule::arrow, UnifyRule::list,
                               substitution_rule(rel)};
    std::optional<Occurrences> occ;
    for (UnifyRule rule : order) {
        if (rule == substitution_rule(rel)) occ = count(s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (applicable(rule, s[i], occ ? *occ : Occurrences{})) return StepResult{fire(s, rule, i), rule, i};
        }
    }
    return std::nullopt;
}

std::optional<EquationSet> step_u(const EquationSet& s) {
    auto r = step(s, Relation::u);
    if (!r) return std::nullopt;
    return std::move(r->set);
}

std::optional<EquationSet> step_o(const EquationSet& s) {
    auto r = step(s, Relation::o);
    if (!r) return std::nullopt;
    return std::move(r->set);
}

std::optional<StepResult> random_step(const EquationSet& s, Relation rel, std::mt19937_64& rng) {
    const UnifyRule order[] = {UnifyRule::erase, UnifyRule::swap, UnifyRule::arrow, UnifyRule::list,
                               substitution_rule(rel)};
    Occurrences occ = count(s);
    std::vector<std::pair<UnifyRule, std::size_t>> candidates;
    for (UnifyRule rule : order) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (applicable(rule, s[i], occ)) candidates.emplace_back(rule, i);
        }
    }
    if (candidates.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    auto [rule, i] = candidates[pick(rng)];
    return StepResult{fire(s, rule, i), rule, i};
}

std::size_t u_step_bound(const NormalizationStats& stats) {
    return (stats.var_count + 1) * (2 * stats.peak_weight + 1) + stats.var_count;
}

namespace {

template <class Step>
EquationSet iterate(const EquationSet& s, NormalizationStats* stats, std::size_t step_cap, Step&& next) {
    NormalizationStats local;
    local.var_count = s.vars().size();
    local.peak_weight = s.weight();
    EquationSet cur = s;
    while (auto r = next(cur)) {
        if (local.steps == step_cap) throw NonTermination("unification exceeded its step cap");
        ++local.steps;
        if (r->rule == UnifyRule::subs || r->rule == UnifyRule::subs_out) ++local.subs_steps;
        cur = std::move(r->set);
        local.peak_weight = std::max(local.peak_weight, cur.weight());
    }
    if (stats) *stats = local;
    return cur;
}

}  // namespace

EquationSet normalize_literal(const EquationSet& s, Relation rel, NormalizationStats* stats, std::size_t step_cap) {
    return iterate(s, stats, step_cap, [rel](const EquationSet& cur) { return step(cur, rel); });
}

EquationSet normalize_random(const EquationSet& s, Relation rel, std::mt19937_64& rng, NormalizationStats* stats,
                             std::size_t step_cap) {
    return iterate(s, stats, step_cap, [rel, &rng](const EquationSet& cur) { return random_step(cur, rel, rng); });
}

EquationSet normalize(const EquationSet& s, Relation rel) {
    if (auto fast = normalize_fast(s, rel)) return std::move(*fast);
    return normalize_literal(s, rel);
}

EquationSet normalize_u(const EquationSet& s) { return normalize(s, Relation::u); }
EquationSet normalize_o(const EquationSet& s) { return normalize(s, Relation::o); }

PreSubst extract_mgu(const EquationSet& s) {
    if (!classify(s).solved) throw NotSolvedForm("equation set is not in solved form");
    PreSubst psi;
    for (const auto& e : s) psi.bind(e.as_type().lhs.var_id(), e.as_type().rhs);
    return psi;
}

bool solves(const PreSubst& psi, const EquationSet& s) {
    for (const auto& e : s) {
        if (e.is_type()) {
            if (!(apply(psi, e.as_type().lhs) == apply(psi, e.as_type().rhs))) return false;
        } else if (!(apply(psi, e.as_list().lhs) == apply(psi, e.as_list().rhs))) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Equivalence modulo renaming.

namespace {

// Variables in order of first occurrence within one equation.
void ordered_vars(const PreType& t, std::vector<VarId>& out) {
    if (t.is_var()) {
        out.push_back(t.var_id());
        return;
    }
    for (const auto& d : t.domain()) ordered_vars(d, out);
    ordered_vars(t.codomain(), out);
}

std::vector<VarId> ordered_vars(const Equation& e) {
    std::vector<VarId> out;
    if (e.is_type()) {
        ordered_vars(e.as_type().lhs, out);
        ordered_vars(e.as_type().rhs, out);
    } else {
        for (const auto& t : e.as_list().lhs) ordered_vars(t, out);
        out.push_back(static_cast<VarId>(-1));  // separator keeps the sides apart
        for (const auto& t : e.as_list().rhs) ordered_vars(t, out);
    }
    return out;
}

// Rendering with variables numbered locally; equal for equations that are
// renamings of each other.
std::string shape(const Equation& e) {
    std::map<VarId, VarId> local;
    auto namer = [&local](VarId v) {
        auto [it, _] = local.emplace(v, static_cast<VarId>(local.size()));
        return std::to_string(it->second);
    };
    return (e.is_list() ? "L" : "T") + to_string(e, true, namer);
}

struct Matcher {
    std::vector<std::vector<VarId>> left;
    std::vector<std::vector<VarId>> right;
    std::vector<std::vector<std::size_t>> options;  // per left equation
    std::vector<bool> used;
    std::unordered_map<VarId, VarId> fwd;
    std::unordered_map<VarId, VarId> bwd;

    bool bind(const std::vector<VarId>& a, const std::vector<VarId>& b, std::vector<VarId>& added) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            auto f = fwd.find(a[k]);
            auto g = bwd.find(b[k]);
            if (f == fwd.end() && g == bwd.end()) {
                fwd.emplace(a[k], b[k]);
                bwd.emplace(b[k], a[k]);
                added.push_back(a[k]);
            } else if (f == fwd.end() || g == bwd.end() || f->second != b[k]) {
                return false;
            }
        }
        return true;
    }

    void undo(const std::vector<VarId>& added) {
        for (VarId v : added) {
            bwd.erase(fwd[v]);
            fwd.erase(v);
        }
    }

    bool search(const std::vector<std::size_t>& order, std::size_t depth) {
        if (depth == order.size()) return true;
        std::size_t i = order[depth];
        for (std::size_t j : options[i]) {
            if (used[j]) continue;
            std::vector<VarId> added;
            if (bind(left[i], right[j], added)) {
                used[j] = true;
                if (search(order, depth + 1)) return true;
                used[j] = false;
            }
            undo(added);
        }
        return false;
    }
};

}  // namespace

bool equivalent_modulo_renaming(const EquationSet& a, const EquationSet& b) {
    if (a.size() != b.size()) return false;
    std::unordered_map<std::string, std::vector<std::size_t>> buckets;
    for (std::size_t j = 0; j < b.size(); ++j) buckets[shape(b[j])].push_back(j);

    Matcher m;
    m.used.assign(b.size(), false);
    for (const auto& e : a) m.left.push_back(ordered_vars(e));
    for (const auto& e : b) m.right.push_back(ordered_vars(e));
    std::unordered_map<std::string, std::size_t> demand;
    for (const auto& e : a) {
        std::string sh = shape(e);
        auto it = buckets.find(sh);
        if (it == buckets.end()) return false;
        if (++demand[sh] > it->second.size()) return false;
        m.options.push_back(it->second);
    }
    // Most constrained equations first; ties keep set order.
    std::vector<std::size_t> order(a.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return m.options[x].size() < m.options[y].size(); });
    return m.search(order, 0);
}

}  // namespace itype
