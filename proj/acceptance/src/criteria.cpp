#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "itype/acceptance.hpp"
#include "itype/checker.hpp"
#include "itype/pseudo.hpp"
#include "itype/unify.hpp"

namespace itype::acceptance {

std::string to_string(const CriterionResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "%s %2d %-28s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds);
    return head + r.detail;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Canonical rendering of (pd, psi), both under the pd's canonical renaming.
std::string outcome_key(const InferOutcome& o) {
    if (!o.ok()) return to_string(o.status);
    CanonicalRenaming ren = canonical_renaming(o.pd);
    std::map<VarId, std::string> psi;
    for (const auto& [v, t] : o.psi->bindings()) psi.emplace(ren(v), std::string());
    const PreSubst rename = ren.as_pre_subst();
    for (const auto& [v, t] : o.psi->bindings()) psi[ren(v)] = to_string(apply(rename, t));
    std::string out = canonical_form(o.pd) + "\npsi:";
    for (const auto& [v, s] : psi) out += " " + var_name(v) + "=" + s;
    return out;
}

std::string show(const EquationSet& s) {
    std::string out = "{";
    for (const auto& e : s) out += (out.size() > 1 ? "; " : "") + to_string(e);
    return out + "}";
}

}  // namespace

struct Suite::State {
    SuiteOptions opts;
    std::optional<std::vector<CorpusTerm>> corpus;
    // Deterministic, audited runs at opts.fuel, one per corpus term.
    std::vector<std::optional<InferOutcome>> outcomes;
    double inference_seconds = 0;

    // Audit of nf(E) over every round of every run of criteria 2 to 5.
    std::size_t audited_runs = 0;
    std::size_t unsolvable_nfs = 0;
    std::string first_unsolvable;
    bool audited[6] = {};

    InferOutcome audited_run(const Term& t, InferConfig cfg) {
        cfg.audit_unsolvable = true;
        InferOutcome out = infer_strong(t, cfg);
        ++audited_runs;
        unsolvable_nfs += out.unsolvable_nfs.size();
        if (!out.unsolvable_nfs.empty() && first_unsolvable.empty()) {
            first_unsolvable = to_string(t) + " round " + std::to_string(out.unsolvable_nfs.front().round) + ": " +
                               show(out.unsolvable_nfs.front().nf);
        }
        return out;
    }

    const std::vector<CorpusTerm>& get_corpus() {
        if (!corpus) {
            corpus = build_corpus(opts.corpus);
            outcomes.assign(corpus->size(), std::nullopt);
        }
        return *corpus;
    }

    const InferOutcome& outcome(std::size_t i) {
        get_corpus();
        if (!outcomes[i]) {
            auto t0 = Clock::now();
            InferConfig cfg;
            cfg.fuel = opts.fuel;
            outcomes[i] = audited_run((*corpus)[i].term, cfg);
            inference_seconds += seconds_since(t0);
        }
        return *outcomes[i];
    }

    CriterionResult golden_example();
    CriterionResult soundness();
    CriterionResult termination();
    CriterionResult normal_forms();
    CriterionResult confluence();
    CriterionResult unification();
    CriterionResult unsolvable_audit();
    CriterionResult reconstruction();
    CriterionResult closure();
    CriterionResult subject_reduction();
    CriterionResult named_instances();
};

Suite::Suite(SuiteOptions opts) : state_(std::make_unique<State>()) { state_->opts = std::move(opts); }
Suite::~Suite() = default;

const std::vector<CorpusTerm>& Suite::corpus() { return state_->get_corpus(); }

CriterionResult Suite::run(int id) {
    auto t0 = Clock::now();
    CriterionResult r;
    try {
        switch (id) {
        case 1: r = state_->golden_example(); break;
        case 2: r = state_->soundness(); break;
        case 3: r = state_->termination(); break;
        case 4: r = state_->normal_forms(); break;
        case 5: r = state_->confluence(); break;
        case 6: r = state_->unification(); break;
        case 7: r = state_->unsolvable_audit(); break;
        case 8: r = state_->reconstruction(); break;
        case 9: r = state_->closure(); break;
        case 10: r = state_->subject_reduction(); break;
        case 11: r = state_->named_instances(); break;
        default: throw std::out_of_range("no criterion " + std::to_string(id));
        }
    } catch (const std::out_of_range&) {
        throw;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.id = id;
    if (r.seconds == 0) r.seconds = seconds_since(t0);
    return r;
}

std::vector<CriterionResult> Suite::run_all(const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= criterion_count; ++id) {
        out.push_back(run(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

// ---------------------------------------------------------------------------

CriterionResult Suite::State::golden_example() {
    CriterionResult r{1, "golden-example", false, "", 0};
    auto t0 = Clock::now();
    auto expect = [](const EquationSet& got, const char* want, std::vector<std::string>& errors, const char* what) {
        NameInterner names;
        EquationSet w = parse_equations(want, names);
        if (!equivalent_modulo_renaming(got, w)) errors.push_back(std::string(what) + " = " + show(got));
    };
    std::vector<std::string> errors;
    PseudoDerivation pd = minimal_pd(parse_term("(\\x.x) y"), Mode::weak);
    EquationSet e = equations_of(pd);
    expect(e, "b = <a>->a; b = <c>->d", errors, "E");
    expect(normalize_u(e), "b = <a>->a; c = a; d = a", errors, "nf(E)");

    PreList anchor = many_conclusions(pd).at(0);
    PseudoDerivation expanded = expand(pd, anchor, 1);
    EquationSet nf_expanded = normalize_u(equations_of(expanded));
    expect(nf_expanded, "b = <a>->a; <a> = <c,e>; d = a", errors, "nf(E) after expand");
    if (classify(nf_expanded).blocked.size() != 1) errors.push_back("expand: expected one blocked equation");

    PseudoDerivation erased = erase(pd, anchor, 1);
    EquationSet nf_erased = normalize_u(equations_of(erased));
    expect(nf_erased, "b = <a>->a; <a> = <>; d = a", errors, "nf(E) after erase");
    if (classify(nf_erased).blocked.size() != 1) errors.push_back("erase: expected one blocked equation");

    r.seconds = seconds_since(t0);
    if (r.seconds >= 1.0) errors.push_back("slower than 1s");
    r.passed = errors.empty();
    r.detail = r.passed ? "E, nf(E), expansion and erasure match" : errors.front();
    for (std::size_t i = 1; i < errors.size(); ++i) r.detail += "; " + errors[i];
    return r;
}

CriterionResult Suite::State::soundness() {
    CriterionResult r{2, "soundness", false, "", 0};
    audited[2] = true;
    const auto& c = get_corpus();
    auto t0 = Clock::now();
    std::size_t sn = 0, successes = 0, violations = 0;
    std::string first;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].verdict != SnVerdict::strongly_normalizing) continue;
        ++sn;
        const InferOutcome& o = outcome(i);
        if (!o.ok()) continue;
        ++successes;
        try {
            build_checked_derivation(o);
        } catch (const std::logic_error& e) {
            if (first.empty()) first = c[i].label + ": " + e.what();
            ++violations;
        }
    }
    r.seconds = seconds_since(t0);
    r.passed = sn >= 200 && violations == 0 && r.seconds < 60;
    r.detail = std::to_string(sn) + " SN terms, " + std::to_string(successes) + " successes checked, " +
               std::to_string(violations) + " rejected";
    if (!first.empty()) r.detail += "; first: " + first;
    if (sn < 200) r.detail += "; corpus too small";
    return r;
}

CriterionResult Suite::State::termination() {
    CriterionResult r{3, "termination-dichotomy", false, "", 0};
    audited[3] = true;
    const auto& c = get_corpus();
    std::size_t definite = 0, sn = 0, not_sn = 0, undecided = 0, wrong = 0;
    bool have_omega = false, have_k_omega = false;
    std::string first;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].verdict == SnVerdict::budget_exceeded) {
            ++undecided;
            continue;
        }
        ++definite;
        const bool is_sn = c[i].verdict == SnVerdict::strongly_normalizing;
        (is_sn ? sn : not_sn) += 1;
        if (!is_sn && c[i].label == "omega") have_omega = true;
        if (!is_sn && c[i].label == "K-omega") have_k_omega = true;
        const InferOutcome& o = outcome(i);
        if (o.ok() != is_sn) {
            ++wrong;
            if (first.empty()) first = c[i].label + " " + to_string(c[i].term) + " -> " + to_string(o.status);
        }
    }
    r.passed = wrong == 0 && have_omega && have_k_omega;
    r.detail = std::to_string(definite) + " definite (" + std::to_string(sn) + " SN, " + std::to_string(not_sn) +
               " not SN), " + std::to_string(undecided) + " undecided, " + std::to_string(wrong) +
               " misclassified";
    if (!first.empty()) r.detail += "; first: " + first;
    if (!have_omega || !have_k_omega) r.detail += "; missing a non-SN witness";
    return r;
}

CriterionResult Suite::State::normal_forms() {
    CriterionResult r{4, "normal-form-shortcut", false, "", 0};
    audited[4] = true;
    std::vector<Term> nfs = enumerate_normal_forms(opts.normal_form_max_nodes);
    std::size_t bad = 0;
    std::string first;
    InferConfig cfg;
    cfg.fuel = opts.fuel;
    for (const auto& t : nfs) {
        InferOutcome o = audited_run(t, cfg);
        if (!o.ok() || o.expansions != 0) {
            ++bad;
            if (first.empty()) first = to_string(t) + " -> " + to_string(o.status);
        }
    }
    r.passed = bad == 0;
    r.detail = std::to_string(nfs.size()) + " normal forms <= " + std::to_string(opts.normal_form_max_nodes) +
               " nodes, " + std::to_string(bad) + " violations";
    if (!first.empty()) r.detail += "; first: " + first;
    return r;
}

CriterionResult Suite::State::confluence() {
    CriterionResult r{5, "confluence", false, "", 0};
    audited[5] = true;
    const auto& c = get_corpus();
    std::size_t terms = 0, runs = 0, divergent = 0, divergent_blind = 0;
    std::string first;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].verdict != SnVerdict::strongly_normalizing) continue;
        ++terms;
        const InferOutcome& ref = outcome(i);
        const std::string want = outcome_key(ref);
        const std::string want_blind = ref.ok() ? canonical_form(ref.pd, true) : want;
        bool diverged = false;
        for (std::size_t seed = 1; seed <= opts.confluence_seeds; ++seed) {
            InferConfig cfg;
            cfg.fuel = opts.fuel;
            cfg.deterministic = false;
            cfg.choice_seed = seed;
            InferOutcome o = audited_run(c[i].term, cfg);
            ++runs;
            if (outcome_key(o) == want) continue;
            if (!diverged) {
                diverged = true;
                ++divergent;
                if (!o.ok() || canonical_form(o.pd, true) != want_blind) ++divergent_blind;
                if (first.empty()) first = c[i].label + " seed " + std::to_string(seed);
            }
        }
    }
    r.passed = divergent == 0;
    r.detail = std::to_string(terms) + " SN terms x " + std::to_string(opts.confluence_seeds) + " seeds (" +
               std::to_string(runs) + " runs), " + std::to_string(divergent) + " divergent terms";
    if (divergent) {
        r.detail += " (" + std::to_string(divergent_blind) + " also differ up to premise order); first: " + first;
    }
    return r;
}

CriterionResult Suite::State::unification() {
    CriterionResult r{6, "unification-properties", false, "", 0};
    std::mt19937_64 rng(opts.corpus.seed ^ 0x6a09e667f3bcc909ULL);
    constexpr std::size_t cap = 1'000'000;
    constexpr std::size_t orders = 5;
    // Each property counts violating sets; the second number counts those
    // whose nf(S) (when it exists) is in solved form.
    struct Tally {
        const char* name;
        std::size_t sets = 0, solved = 0;
    };
    Tally nonterm_u{"u non-termination"}, nonterm_o{"o non-termination"}, order_u{"u order-dependent"},
        order_o{"o order-dependent"}, extend{"nfo->nf mismatch"}, blocked{"blocked nf from unblocked nfo"};
    // Smallest violating set by weight, for the report.
    std::string first;
    std::size_t first_weight = 0;
    auto hit = [&](Tally& t, bool solved, const EquationSet& s) {
        ++t.sets;
        t.solved += solved;
        if (first.empty() || s.weight() < first_weight) {
            first = std::string(t.name) + " on " + show(s);
            first_weight = s.weight();
        }
    };
    for (std::size_t k = 0; k < opts.equation_sets; ++k) {
        EquationSet s = random_equation_set(rng);
        std::optional<EquationSet> nf, nfo;
        try {
            nf = normalize_literal(s, Relation::u, nullptr, cap);
        } catch (const NonTermination&) {
        }
        try {
            nfo = normalize_literal(s, Relation::o, nullptr, cap);
        } catch (const NonTermination&) {
        }
        const bool solved = nf && classify(*nf).solved;
        bool u_nonterm = !nf, o_nonterm = !nfo, u_order = false, o_order = false;
        for (std::size_t j = 0; j < orders; ++j) {
            std::mt19937_64 order(k * orders + j);
            try {
                EquationSet other = normalize_random(s, Relation::u, order, nullptr, cap);
                if (nf && !equivalent_modulo_renaming(other, *nf)) u_order = true;
            } catch (const NonTermination&) {
                u_nonterm = true;
            }
            try {
                EquationSet other = normalize_random(s, Relation::o, order, nullptr, cap);
                if (nfo && !equivalent_modulo_renaming(other, *nfo)) o_order = true;
            } catch (const NonTermination&) {
                o_nonterm = true;
            }
        }
        if (u_nonterm) hit(nonterm_u, solved, s);
        if (o_nonterm) hit(nonterm_o, solved, s);
        if (u_order) hit(order_u, solved, s);
        if (o_order) hit(order_o, solved, s);
        if (nf && nfo) {
            bool same = false;
            try {
                same = equivalent_modulo_renaming(normalize_literal(*nfo, Relation::u, nullptr, cap), *nf);
            } catch (const NonTermination&) {
            }
            if (!same) hit(extend, solved, s);
            if (!classify(*nfo).is_blocked() && classify(*nf).is_blocked()) hit(blocked, solved, s);
        }
    }
    std::size_t total = 0;
    r.detail = std::to_string(opts.equation_sets) + " sets; violating sets (of which nf solved):";
    for (const Tally* t : {&nonterm_u, &nonterm_o, &order_u, &order_o, &extend, &blocked}) {
        total += t->sets;
        r.detail += std::string(" ") + t->name + " " + std::to_string(t->sets) + " (" + std::to_string(t->solved) + "),";
    }
    r.detail.pop_back();
    r.passed = total == 0;
    if (!first.empty()) r.detail += "; smallest: " + first;
    return r;
}

CriterionResult Suite::State::unsolvable_audit() {
    CriterionResult r{7, "no-unsolvable-normal-forms", false, "", 0};
    std::string ran;
    for (int id = 2; id <= 5; ++id) {
        if (audited[id]) continue;
        switch (id) {
        case 2: soundness(); break;
        case 3: termination(); break;
        case 4: normal_forms(); break;
        case 5: confluence(); break;
        }
        ran += (ran.empty() ? " (ran " : ", ") + std::to_string(id);
    }
    if (!ran.empty()) ran += " first)";
    r.passed = unsolvable_nfs == 0 && audited_runs > 0;
    r.detail = std::to_string(audited_runs) + " audited runs, " + std::to_string(unsolvable_nfs) +
               " unsolvable normal forms" + ran;
    if (!first_unsolvable.empty()) r.detail += "; first: " + first_unsolvable;
    return r;
}

CriterionResult Suite::State::reconstruction() {
    CriterionResult r{8, "reconstruction", false, "", 0};
    std::mt19937_64 rng(opts.corpus.seed ^ 0xbb67ae8584caa73bULL);
    std::size_t cases[2] = {0, 0}, edits_total[2] = {0, 0}, invariant = 0, replay = 0, reconstruct = 0;
    std::string first;
    for (Mode mode : {Mode::strong, Mode::weak}) {
        const int m = mode == Mode::strong ? 0 : 1;
        while (cases[m] < opts.reconstruction_cases) {
            Term t = make_hygienic(random_term(std::uniform_int_distribution<std::size_t>(3, 8)(rng), rng));
            PseudoDerivation pd = minimal_pd(t, mode);
            if (many_conclusions(pd).empty()) continue;
            ++cases[m];
            std::vector<StructuralEdit> edits;
            const std::size_t wanted = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
            for (std::size_t k = 0; k < wanted; ++k) {
                std::vector<PreList> anchors;
                for (const auto& l : many_conclusions(pd)) {
                    try {
                        if (!l.empty() && find_many(pd, l)) anchors.push_back(l);
                    } catch (const AmbiguousAnchor&) {
                    }
                }
                if (anchors.empty()) break;
                const PreList& anchor = anchors[std::uniform_int_distribution<std::size_t>(0, anchors.size() - 1)(rng)];
                StructuralEdit e{EditKind::expansion, anchor, std::uniform_int_distribution<std::size_t>(1, 2)(rng)};
                if (mode == Mode::weak && std::bernoulli_distribution(0.4)(rng)) {
                    e.kind = EditKind::erasure;
                    e.delta = std::uniform_int_distribution<std::size_t>(1, anchor.size())(rng);
                }
                pd = apply_edit(pd, e);
                edits.push_back(e);
                ++edits_total[m];
                auto v = structural_violations(pd);
                if (!v.empty()) {
                    ++invariant;
                    if (first.empty()) first = to_string(t) + " after " + to_string(e) + ": " + v.front();
                }
            }
            const std::string want = canonical_form(pd, true);
            PseudoDerivation replayed = apply_edits(minimal_pd(t, mode), edits);
            if (canonical_form(replayed, true) != want) {
                ++replay;
                if (first.empty()) first = to_string(t) + ": replay differs";
            }
            PseudoDerivation rebuilt = apply_edits(minimal_pd(t, mode), reconstruct_edits(pd, 0));
            if (canonical_form(rebuilt, true) != want) {
                ++reconstruct;
                if (first.empty()) first = to_string(t) + ": reconstruction differs";
            }
        }
    }
    r.passed = invariant + replay + reconstruct == 0;
    r.detail = "strong " + std::to_string(cases[0]) + " cases / " + std::to_string(edits_total[0]) + " edits, weak " +
               std::to_string(cases[1]) + " cases / " + std::to_string(edits_total[1]) +
               " edits; invariant violations " + std::to_string(invariant) + ", replay mismatches " +
               std::to_string(replay) + ", reconstruction mismatches " + std::to_string(reconstruct);
    if (!first.empty()) r.detail += "; first: " + first;
    return r;
}

CriterionResult Suite::State::closure() {
    CriterionResult r{9, "closure-under-substitution", false, "", 0};
    const auto& c = get_corpus();
    std::mt19937_64 rng(opts.corpus.seed ^ 0x3c6ef372fe94f82bULL);
    std::size_t used = 0, checked = 0, bad = 0;
    std::string first;
    for (std::size_t i = 0; i < c.size() && used < opts.closure_outcomes; ++i) {
        if (c[i].verdict != SnVerdict::strongly_normalizing || !outcome(i).ok()) continue;
        ++used;
        Derivation d = build_checked_derivation(outcome(i));
        std::set<VarId> vars;
        collect_vars(d, vars);
        const VarId pool = static_cast<VarId>(vars.empty() ? 3 : *vars.rbegin() + 4);
        for (std::size_t k = 0; k < opts.closure_substitutions; ++k) {
            TypeSubst phi;
            for (VarId v : vars) phi.emplace(v, random_itype(rng, 2, pool));
            ++checked;
            ValidationReport rep = validate(itype::apply(phi, d), Mode::strong);
            if (!rep.valid()) {
                ++bad;
                if (first.empty()) first = c[i].label + ": " + rep.violations.front().message;
            }
        }
    }
    r.passed = bad == 0 && used >= opts.closure_outcomes;
    r.detail = std::to_string(used) + " outcomes x " + std::to_string(opts.closure_substitutions) +
               " substitutions, " + std::to_string(bad) + " of " + std::to_string(checked) + " rejected";
    if (!first.empty()) r.detail += "; first: " + first;
    return r;
}

CriterionResult Suite::State::subject_reduction() {
    CriterionResult r{10, "weak-subject-reduction", false, "", 0};
    const auto& c = get_corpus();
    std::size_t terms = 0, reducts = 0, bad = 0;
    std::string first;
    InferConfig cfg;
    cfg.fuel = opts.fuel;
    for (const auto& ct : c) {
        if (ct.verdict != SnVerdict::strongly_normalizing) continue;
        ++terms;
        for (const Term& n : one_step_reducts(ct.term)) {
            ++reducts;
            InferOutcome o = infer_strong(make_hygienic(n), cfg);
            if (!o.ok()) {
                ++bad;
                if (first.empty()) first = to_string(ct.term) + " -> " + to_string(n) + ": " + to_string(o.status);
            }
        }
    }
    r.passed = bad == 0;
    r.detail = std::to_string(terms) + " SN terms, " + std::to_string(reducts) + " one-step reducts, " +
               std::to_string(bad) + " not typed";
    if (!first.empty()) r.detail += "; first: " + first;
    return r;
}

CriterionResult Suite::State::named_instances() {
    CriterionResult r{11, "named-typings", false, "", 0};
    struct Case {
        const char* term;
        const char* typing;
        long expansions;  // -1: any
    };
    const Case cases[] = {
        {"\\x.x", "\xE2\x8A\xA2 \xCE\xBBx.x : [a]\xE2\x86\x92" "a", 0},
        {"\\x.\\y.x", "\xE2\x8A\xA2 \xCE\xBBx.\xCE\xBBy.x : [a]\xE2\x86\x92[b]\xE2\x86\x92" "a", 0},
        {"\\x.x x", "\xE2\x8A\xA2 \xCE\xBBx.x x : [[a]\xE2\x86\x92" "b,a]\xE2\x86\x92" "b", 0},
        {"(\\x.x x)(\\y.y)", "\xE2\x8A\xA2 (\xCE\xBBx.x x) (\xCE\xBBy.y) : [a]\xE2\x86\x92" "a", 1},
    };
    std::vector<std::string> errors;
    for (const auto& k : cases) {
        InferConfig cfg;
        cfg.fuel = opts.fuel;
        cfg.trace = true;
        InferOutcome o = infer_strong(parse_term(k.term), cfg);
        if (!o.ok()) {
            errors.push_back(std::string(k.term) + ": " + to_string(o.status));
            continue;
        }
        build_checked_derivation(o);
        std::string got = to_string(final_typing(o));
        if (got != k.typing) errors.push_back(got);
        long expanded = 0;
        for (const auto& e : o.trace) expanded += e.kind == TraceEvent::Kind::expanded;
        if (k.expansions >= 0 && expanded != k.expansions) {
            errors.push_back(std::string(k.term) + ": " + std::to_string(expanded) + " expansion events");
        }
    }
    r.passed = errors.empty();
    r.detail = r.passed ? "4 typings match and check" : errors.front();
    for (std::size_t i = 1; i < errors.size(); ++i) r.detail += "; " + errors[i];
    return r;
}

}  // namespace itype::acceptance
