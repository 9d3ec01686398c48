#include "itype/infer.hpp"

#include <algorithm>
#include <random>

namespace itype {

std::string to_string(TraceEvent::Kind k) {
    switch (k) {
    case TraceEvent::Kind::normalized:
        return "normalized";
    case TraceEvent::Kind::blocked_chosen:
        return "blocked-chosen";
    case TraceEvent::Kind::no_op:
        return "no-op";
    case TraceEvent::Kind::expanded:
        return "expanded";
    case TraceEvent::Kind::final_unification:
        return "final-unification";
    }
    return "?";
}

std::string to_string(const TraceEvent& e, bool ascii) {
    std::string out = "[" + std::to_string(e.round) + "] " + to_string(e.kind);
    switch (e.kind) {
    case TraceEvent::Kind::normalized:
    case TraceEvent::Kind::final_unification: {
        out += " (" + std::to_string(e.set->size()) + " equations)";
        for (const auto& eq : *e.set) out += "\n    " + to_string(eq, ascii);
        break;
    }
    case TraceEvent::Kind::blocked_chosen:
    case TraceEvent::Kind::no_op:
        out += " " + to_string(*e.equation, ascii) + " (lengths " + std::to_string(e.lengths.first) + ", " +
               std::to_string(e.lengths.second) + ")";
        break;
    case TraceEvent::Kind::expanded:
        out += " " + to_string(e.anchor, ascii) + " by " + std::to_string(e.delta);
        break;
    }
    return out;
}

std::string to_string(InferStatus s) {
    switch (s) {
    case InferStatus::success:
        return "success";
    case InferStatus::fuel_exhausted:
        return "fuel-exhausted";
    case InferStatus::stalled:
        return "stalled";
    case InferStatus::cancelled:
        return "cancelled";
    case InferStatus::unsolvable:
        return "unsolvable";
    }
    return "?";
}

namespace {

EquationSet run_normalizer(const EquationSet& s, Relation rel, UnifyEngine engine) {
    return engine == UnifyEngine::fast ? normalize(s, rel) : normalize_literal(s, rel);
}

}  // namespace

InferOutcome infer_strong(const Term& t, const InferConfig& cfg) {
    if (cfg.fuel == 0) throw std::invalid_argument("fuel must be at least 1");
    InferOutcome out{InferStatus::fuel_exhausted, minimal_pd(t, Mode::strong), std::nullopt, std::nullopt, {}, 0, {}};
    std::mt19937_64 rng(cfg.choice_seed);
    auto record = [&](TraceEvent e) {
        if (cfg.trace) out.trace.push_back(std::move(e));
    };

    EquationSet current;
    for (std::size_t round = 0;; ++round) {
        const EquationSet e = equations_of(out.pd);
        if (cfg.audit_unsolvable) {
            EquationSet nf = run_normalizer(e, Relation::u, cfg.engine);
            if (classify(nf).unsolvable()) out.unsolvable_nfs.push_back({round, std::move(nf)});
        }
        current = run_normalizer(e, Relation::o, cfg.engine);
        record({TraceEvent::Kind::normalized, round, current, std::nullopt, {0, 0}, {}, 0});
        FormReport form = classify(current);
        if (!form.is_blocked()) break;
        if (cfg.stop.stop_requested()) {
            out.status = InferStatus::cancelled;
            return out;
        }
        if (out.expansions == cfg.fuel) {
            out.status = InferStatus::fuel_exhausted;
            return out;
        }
        std::vector<std::size_t> candidates = form.blocked;
        if (!cfg.deterministic) std::shuffle(candidates.begin(), candidates.end(), rng);
        bool expanded = false;
        for (std::size_t i : candidates) {
            const ListEquation& blocked = current[i].as_list();
            const std::size_t l = blocked.lhs.size();
            const std::size_t r = blocked.rhs.size();
            const PreList& shorter = l < r ? blocked.lhs : blocked.rhs;
            const std::size_t delta = l < r ? r - l : l - r;
            if (shorter.empty() || !find_many(out.pd, shorter)) {
                // Expanding would leave the tree unchanged; this equation is
                // not eligible again in this round.
                record({TraceEvent::Kind::no_op, round, std::nullopt, current[i], {l, r}, {}, 0});
                continue;
            }
            record({TraceEvent::Kind::blocked_chosen, round, std::nullopt, current[i], {l, r}, {}, 0});
            out.pd = expand(out.pd, shorter, delta, true);
            ++out.expansions;
            record({TraceEvent::Kind::expanded, round, std::nullopt, std::nullopt, {0, 0}, shorter, delta});
            if (cfg.on_expansion) cfg.on_expansion(out.pd);
            expanded = true;
            break;
        }
        if (!expanded) {
            out.status = InferStatus::stalled;
            return out;
        }
    }

    EquationSet nf = run_normalizer(current, Relation::u, cfg.engine);
    record({TraceEvent::Kind::final_unification, out.expansions, nf, std::nullopt, {0, 0}, {}, 0});
    FormReport form = classify(nf);
    if (form.is_blocked()) {
        throw std::logic_error("nf(E) is blocked although nfo(E) is not");
    }
    if (!form.solved) {
        out.status = InferStatus::unsolvable;
        out.unsolvable_nfs.push_back({out.expansions, nf});
        out.solved = std::move(nf);
        return out;
    }
    out.psi = extract_mgu(nf);
    out.solved = std::move(nf);
    out.status = InferStatus::success;
    return out;
}

Derivation to_derivation(const PseudoDerivation& pd) {
    std::function<Derivation(const PdNode&)> go = [&go](const PdNode& n) {
        Derivation d;
        d.rule = n.rule;
        d.subject = n.subject;
        d.env = m_translate(n.env);
        if (n.rule == Rule::many) {
            d.conclusion = m_translate(n.list());
        } else {
            d.conclusion = m_translate(n.type());
        }
        for (const auto& c : n.children) d.children.push_back(go(*c));
        return d;
    };
    return go(pd.root());
}

Typing final_typing(const InferOutcome& out) {
    if (!out.ok() || !out.psi) throw std::invalid_argument("final_typing needs a successful outcome");
    const PdNode& root = out.pd.root();
    return Typing{m_translate(apply(*out.psi, root.env)), root.subject, m_translate(apply(*out.psi, root.type()))};
}

Derivation build_checked_derivation(const InferOutcome& out) {
    if (!out.ok() || !out.psi) throw std::invalid_argument("build_checked_derivation needs a successful outcome");
    Derivation d = to_derivation(apply(*out.psi, out.pd));
    ValidationReport report = validate(d, Mode::strong);
    if (!report.valid()) throw std::logic_error("checker rejected the inferred derivation:\n" + to_string(report));
    return d;
}

std::string to_string(const Typing& t, bool ascii) {
    CanonicalRenaming ren;
    ren.visit(t.env);
    ren.visit(t.type);
    // Renaming can change the order inside multisets, so apply it and let
    // them re-sort before printing.
    TypeSubst rename = ren.as_type_subst();
    std::string out = to_string(itype::apply(rename, t.env), ascii);
    out += out.empty() ? "" : " ";
    out += ascii ? "|- " : "\xE2\x8A\xA2 ";
    out += to_string(t.subject, ascii) + " : " + to_string(itype::apply(rename, t.type), ascii);
    return out;
}

}  // namespace itype
