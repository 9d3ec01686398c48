#include <map>
#include <unordered_set>

#include "itype/acceptance.hpp"

namespace itype::acceptance {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct TermGen {
    std::mt19937_64& rng;
    const std::vector<std::string>& free_names;
    std::vector<std::string> scope;
    std::size_t next = 0;

    Term gen(std::size_t n) {
        if (n == 1) {
            std::size_t k = uniform(rng, 0, scope.size() + free_names.size() - 1);
            return Term::var(k < scope.size() ? scope[k] : free_names[k - scope.size()]);
        }
        if (n == 2 || coin(rng, 1.0 / 3)) {
            std::string binder = "v" + std::to_string(++next);
            scope.push_back(binder);
            Term body = gen(n - 1);
            scope.pop_back();
            return Term::abs(binder, std::move(body));
        }
        std::size_t left = uniform(rng, 1, n - 2);
        Term f = gen(left);
        return Term::app(std::move(f), gen(n - 1 - left));
    }
};

}  // namespace

Term random_term(std::size_t size, std::mt19937_64& rng, const std::vector<std::string>& free_names) {
    if (size == 0) throw std::invalid_argument("a term has at least one node");
    TermGen g{rng, free_names, {}, 0};
    return g.gen(size);
}

std::vector<Term> enumerate_normal_forms(std::size_t max_nodes, const std::vector<std::string>& alphabet) {
    // nf[n]: normal forms of size n; neutral[n]: those of the form x N1 ... Nk.
    std::vector<std::vector<Term>> nf(max_nodes + 1), neutral(max_nodes + 1);
    auto dedupe = [](std::vector<Term>& v) {
        std::unordered_set<std::string> seen;
        std::vector<Term> out;
        for (auto& t : v) {
            if (seen.insert(alpha_key(t)).second) out.push_back(std::move(t));
        }
        v = std::move(out);
    };
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        if (n == 1) {
            for (const auto& x : alphabet) neutral[1].push_back(Term::var(x));
        }
        for (std::size_t k = 1; k + 2 <= n; ++k) {
            for (const auto& h : neutral[k]) {
                for (const auto& a : nf[n - 1 - k]) neutral[n].push_back(Term::app(h, a));
            }
        }
        dedupe(neutral[n]);
        nf[n] = neutral[n];
        for (const auto& x : alphabet) {
            for (const auto& b : nf[n - 1]) nf[n].push_back(Term::abs(x, b));
        }
        dedupe(nf[n]);
    }
    std::vector<Term> out;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        for (const auto& t : nf[n]) out.push_back(make_hygienic(t));
    }
    return out;
}

namespace {

PreType random_pretype(std::mt19937_64& rng, std::size_t depth, std::size_t pool) {
    if (depth == 0 || coin(rng, 0.45)) return PreType::var(static_cast<VarId>(uniform(rng, 0, pool - 1)));
    PreList dom;
    const std::size_t len = uniform(rng, 0, 3) == 0 ? 2 : 1 + uniform(rng, 0, 1) * uniform(rng, 0, 2);
    for (std::size_t i = 0; i < len; ++i) dom.push_back(random_pretype(rng, depth - 1, pool));
    return PreType::arrow(std::move(dom), random_pretype(rng, depth - 1, pool));
}

PreList random_prelist(std::mt19937_64& rng, std::size_t depth, std::size_t pool) {
    PreList l;
    const std::size_t len = uniform(rng, 0, 3);
    for (std::size_t i = 0; i < len; ++i) l.push_back(random_pretype(rng, depth, pool));
    return l;
}

}  // namespace

EquationSet random_equation_set(std::mt19937_64& rng, std::size_t max_equations, std::size_t max_depth,
                                std::size_t var_pool) {
    EquationSet s;
    const std::size_t n = uniform(rng, 1, max_equations);
    for (std::size_t i = 0; i < n; ++i) {
        if (coin(rng, 0.2)) {
            s.insert(Equation(random_prelist(rng, max_depth - 1, var_pool), random_prelist(rng, max_depth - 1, var_pool)));
            continue;
        }
        PreType lhs = coin(rng, 0.7) ? PreType::var(static_cast<VarId>(uniform(rng, 0, var_pool - 1)))
                                     : random_pretype(rng, max_depth, var_pool);
        s.insert(Equation(lhs, random_pretype(rng, max_depth, var_pool)));
    }
    return s;
}

IType random_itype(std::mt19937_64& rng, std::size_t max_depth, VarId var_pool) {
    if (max_depth == 0 || coin(rng, 0.5)) return IType::var(static_cast<VarId>(uniform(rng, 0, var_pool - 1)));
    std::vector<IType> elems;
    const std::size_t len = uniform(rng, 1, 2);
    for (std::size_t i = 0; i < len; ++i) elems.push_back(random_itype(rng, max_depth - 1, var_pool));
    return IType::arrow(IMultiset(std::move(elems)), random_itype(rng, max_depth - 1, var_pool));
}

}  // namespace itype::acceptance
