#include <deque>
#include <unordered_map>

#include "itype/unify.hpp"

namespace itype {

namespace {

// Classes of variables joined by var = var equations. A class may carry one
// arrow term; equating two terms decomposes them like the arrow and list
// rules do. The representative of a merged class is the class of the right
// side, which is the variable subs keeps.
class UnionFind {
public:
    explicit UnionFind(const EquationSet& s) {
        for (const auto& e : s) {
            if (e.is_type()) {
                note(e.as_type().lhs);
                note(e.as_type().rhs);
                work_.emplace_back(e.as_type().lhs, e.as_type().rhs);
            } else {
                for (const auto& t : e.as_list().lhs) note(t);
                for (const auto& t : e.as_list().rhs) note(t);
                equate_lists(e.as_list().lhs, e.as_list().rhs);
            }
        }
        // Without an occurs check, circular equations can keep unfolding the
        // same rational tree; such sets are cyclic anyway.
        std::size_t budget = 64 * (s.weight() + 16);
        while (!work_.empty()) {
            if (budget-- == 0) {
                gave_up_ = true;
                return;
            }
            auto [a, b] = std::move(work_.front());
            work_.pop_front();
            unify(a, b);
        }
    }

    bool cyclic() {
        if (gave_up_) return true;
        enum : std::uint8_t { white, grey, black };
        std::vector<std::uint8_t> colour(parent_.size(), white);
        std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> stack;
        for (std::uint32_t start = 0; start < parent_.size(); ++start) {
            std::uint32_t r = find(start);
            if (colour[r] != white) continue;
            colour[r] = grey;
            stack.emplace_back(r, successors(r));
            while (!stack.empty()) {
                auto& [node, succ] = stack.back();
                if (succ.empty()) {
                    colour[node] = black;
                    stack.pop_back();
                    continue;
                }
                std::uint32_t next = succ.back();
                succ.pop_back();
                if (colour[next] == grey) return true;
                if (colour[next] == white) {
                    colour[next] = grey;
                    stack.emplace_back(next, successors(next));
                }
            }
        }
        return false;
    }

    EquationSet render(Relation rel) {
        EquationSet out;
        for (VarId v : order_) {
            std::uint32_t r = find(index_.at(v));
            if (term_[r]) {
                out.insert(Equation(PreType::var(v), resolve_class(r, rel)));
            } else if (var_[r] != v) {
                out.insert(Equation(PreType::var(v), PreType::var(var_[r])));
            }
        }
        for (const auto& [l, r] : blocked_) {
            if (rel == Relation::u) {
                out.insert(Equation(resolve_all(l), resolve_all(r)));
            } else {
                out.insert(Equation(l, r));
            }
        }
        return out;
    }

private:
    void note(const PreType& t) {
        if (t.is_var()) {
            if (!index_.contains(t.var_id())) {
                index_.emplace(t.var_id(), static_cast<std::uint32_t>(parent_.size()));
                parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
                var_.push_back(t.var_id());
                term_.emplace_back();
                order_.push_back(t.var_id());
            }
            return;
        }
        for (const auto& d : t.domain()) note(d);
        note(t.codomain());
    }

    std::uint32_t find(std::uint32_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    std::uint32_t find_var(VarId v) { return find(index_.at(v)); }

    void equate_lists(const PreList& l, const PreList& r) {
        if (l.size() != r.size()) {
            blocked_.emplace_back(l, r);
            return;
        }
        for (std::size_t k = 0; k < l.size(); ++k) work_.emplace_back(l[k], r[k]);
    }

    void unify(const PreType& a, const PreType& b) {
        if (a.is_arrow() && b.is_arrow()) {
            equate_lists(a.domain(), b.domain());
            work_.emplace_back(a.codomain(), b.codomain());
            return;
        }
        if (a.is_var() && b.is_var()) {
            std::uint32_t ra = find_var(a.var_id());
            std::uint32_t rb = find_var(b.var_id());
            if (ra == rb) return;
            parent_[ra] = rb;
            if (term_[ra] && term_[rb]) {
                work_.emplace_back(*term_[ra], *term_[rb]);
            } else if (term_[ra]) {
                term_[rb] = std::move(term_[ra]);
            }
            term_[ra].reset();
            return;
        }
        const PreType& v = a.is_var() ? a : b;
        const PreType& t = a.is_var() ? b : a;
        std::uint32_t r = find_var(v.var_id());
        if (term_[r]) {
            work_.emplace_back(*term_[r], t);
        } else {
            term_[r] = t;
        }
    }

    void successors_of(const PreType& t, std::vector<std::uint32_t>& out) {
        if (t.is_var()) {
            out.push_back(find_var(t.var_id()));
            return;
        }
        for (const auto& d : t.domain()) successors_of(d, out);
        successors_of(t.codomain(), out);
    }

    std::vector<std::uint32_t> successors(std::uint32_t r) {
        std::vector<std::uint32_t> out;
        if (term_[r]) successors_of(*term_[r], out);
        return out;
    }

    // u: every variable replaced by its resolved class. o: only the codomain
    // spine is resolved; list contents stay as written.
    PreType resolve_class(std::uint32_t r, Relation rel) {
        auto& memo = rel == Relation::u ? memo_u_ : memo_o_;
        if (auto it = memo.find(r); it != memo.end()) return it->second;
        PreType out = rel == Relation::u ? resolve_all(*term_[r]) : resolve_spine(*term_[r]);
        memo.emplace(r, out);
        return out;
    }

    PreType resolve_var(VarId v, Relation rel) {
        std::uint32_t r = find_var(v);
        if (term_[r]) return resolve_class(r, rel);
        return PreType::var(var_[r]);
    }

    PreType resolve_all(const PreType& t) {
        if (t.is_var()) return resolve_var(t.var_id(), Relation::u);
        return PreType::arrow(resolve_all(t.domain()), resolve_all(t.codomain()));
    }

    PreList resolve_all(const PreList& l) {
        PreList out;
        out.reserve(l.size());
        for (const auto& t : l) out.push_back(resolve_all(t));
        return out;
    }

    PreType resolve_spine(const PreType& t) {
        if (t.is_var()) return resolve_var(t.var_id(), Relation::o);
        return PreType::arrow(t.domain(), resolve_spine(t.codomain()));
    }

    std::unordered_map<VarId, std::uint32_t> index_;
    std::vector<std::uint32_t> parent_;
    std::vector<VarId> var_;
    std::vector<std::optional<PreType>> term_;
    std::vector<VarId> order_;
    std::deque<std::pair<PreType, PreType>> work_;
    std::vector<std::pair<PreList, PreList>> blocked_;
    std::unordered_map<std::uint32_t, PreType> memo_u_;
    std::unordered_map<std::uint32_t, PreType> memo_o_;
    bool gave_up_ = false;
};

}  // namespace

std::optional<EquationSet> normalize_fast(const EquationSet& s, Relation rel) {
    UnionFind uf(s);
    if (uf.cyclic()) return std::nullopt;
    return uf.render(rel);
}

}  // namespace itype
