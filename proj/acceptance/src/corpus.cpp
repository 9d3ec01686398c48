#include <unordered_set>

#include "itype/acceptance.hpp"

namespace itype::acceptance {

namespace {

const std::string S = "(\\x.\\y.\\z.x z (y z))";
const std::string K = "(\\x.\\y.x)";
const std::string I = "(\\x.x)";
const std::string succ = "(\\n.\\f.\\x.f (n f x))";
const std::string add = "(\\m.\\n.\\f.\\x.m f (n f x))";
const std::string delta = "(\\z.z z)";
const std::string omega = "((\\z.z z) (\\z.z z))";

std::string numeral(unsigned n) { return "(" + to_string(church_numeral(n), true) + ")"; }

}  // namespace

std::vector<CorpusTerm> named_terms(const CorpusOptions& opts) {
    const std::vector<std::pair<std::string, std::string>> sources = {
        {"c0", numeral(0)},
        {"c1", numeral(1)},
        {"c2", numeral(2)},
        {"c3", numeral(3)},
        {"succ", succ},
        {"add", add},
        {"succ c0", succ + numeral(0)},
        {"succ c2", succ + numeral(2)},
        {"add c1 c2", add + numeral(1) + numeral(2)},
        {"add c0 c3", add + numeral(0) + numeral(3)},
        {"add c2 c2", add + numeral(2) + numeral(2)},
        {"c2 c2", numeral(2) + numeral(2)},
        {"S", S},
        {"K", K},
        {"I", I},
        {"S K K", S + K + K},
        {"S K S", S + K + S},
        {"K I", K + I},
        {"S I I", S + I + I},
        {"S (K S) K", S + "(" + K + S + ")" + K},
        {"S (K I) I", S + "(" + K + I + ")" + I},
        {"S K K y", S + K + K + " y"},
        {"K I y z", K + I + " y z"},
        {"S (K S) K x y z", S + "(" + K + S + ")" + K + " x y z"},
        {"delta", delta},
        {"omega", omega},
        {"K-omega", "(\\y.x) " + omega},
        {"omega y", omega + " y"},
        {"lambda omega", "\\w." + omega},
        {"K I omega", K + I + omega},
        {"x omega", "x " + omega},
        {"I omega", I + omega},
        {"K* omega", "(\\x.\\y.y) " + omega},
        {"omega-3", "(\\x.x x x) (\\x.x x x)"},
        {"S I I (S I I)", "(" + S + I + I + ")(" + S + I + I + ")"},
    };
    std::vector<CorpusTerm> out;
    for (const auto& [label, src] : sources) {
        Term t = make_hygienic(parse_term(src));
        out.push_back({label, t, is_strongly_normalizing_oracle(t, opts.oracle_budget, opts.oracle_max_term_size)});
    }
    return out;
}

std::vector<CorpusTerm> build_corpus(const CorpusOptions& opts) {
    std::vector<CorpusTerm> out = named_terms(opts);
    std::unordered_set<std::string> seen;
    for (const auto& c : out) seen.insert(alpha_key(c.term));
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> size(opts.min_size, opts.max_size);
    std::size_t added = 0;
    while (added < opts.random_terms) {
        Term t = make_hygienic(random_term(size(rng), rng));
        if (find_redexes(t).empty() || !seen.insert(alpha_key(t)).second) continue;
        ++added;
        out.push_back({"random-" + std::to_string(added), t,
                       is_strongly_normalizing_oracle(t, opts.oracle_budget, opts.oracle_max_term_size)});
    }
    return out;
}

}  // namespace itype::acceptance
