#include "itype/serialize.hpp"

#include <json.hpp>

namespace itype {

using nlohmann::json;

namespace {

json env_json(const PreEnv& e, bool ascii) {
    json out = json::object();
    for (const auto& [x, l] : e.entries()) out[x] = to_string(l, ascii);
    return out;
}

json env_json(const TypeEnv& e, bool ascii) {
    json out = json::object();
    for (const auto& [x, m] : e.entries()) out[x] = to_string(m, ascii);
    return out;
}

json pd_node_json(const PdNode& n, bool ascii) {
    json out;
    out["rule"] = to_string(n.rule);
    out["subject"] = to_string(n.subject, ascii);
    out["env"] = env_json(n.env, ascii);
    out["conclusion"] = n.rule == Rule::many ? to_string(n.list(), ascii) : to_string(n.type(), ascii);
    json eqs = json::array();
    if (n.equation) eqs.push_back(to_string(*n.equation, ascii));
    out["equations"] = std::move(eqs);
    json children = json::array();
    for (const auto& c : n.children) children.push_back(pd_node_json(*c, ascii));
    out["children"] = std::move(children);
    return out;
}

json derivation_json(const Derivation& d, bool ascii) {
    json out;
    out["rule"] = to_string(d.rule);
    out["subject"] = to_string(d.subject, ascii);
    out["env"] = env_json(d.env, ascii);
    if (d.concludes_multiset()) {
        out["conclusion"] = to_string(std::get<IMultiset>(d.conclusion), ascii);
    } else {
        out["conclusion"] = to_string(std::get<IType>(d.conclusion), ascii);
    }
    json children = json::array();
    for (const auto& c : d.children) children.push_back(derivation_json(c, ascii));
    out["children"] = std::move(children);
    return out;
}

json equations_json(const EquationSet& s, bool ascii) {
    json out = json::array();
    for (const auto& e : s) out.push_back(to_string(e, ascii));
    return out;
}

json event_json(const TraceEvent& e, bool ascii) {
    json out;
    out["round"] = e.round;
    out["event"] = to_string(e.kind);
    switch (e.kind) {
    case TraceEvent::Kind::normalized:
    case TraceEvent::Kind::final_unification:
        out["equations"] = equations_json(*e.set, ascii);
        break;
    case TraceEvent::Kind::blocked_chosen:
    case TraceEvent::Kind::no_op:
        out["equation"] = to_string(*e.equation, ascii);
        out["lengths"] = {e.lengths.first, e.lengths.second};
        break;
    case TraceEvent::Kind::expanded:
        out["anchor"] = to_string(e.anchor, ascii);
        out["delta"] = e.delta;
        break;
    }
    return out;
}

std::string dump(const json& j, int indent) { return j.dump(indent, ' ', false); }

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw JsonFormatError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

std::string string_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_string()) throw JsonFormatError(std::string("field \"") + name + "\" must be a string");
    return f.get<std::string>();
}

Derivation parse_node(const json& j, NameInterner& names) {
    Derivation d;
    std::string rule = string_field(j, "rule");
    auto r = rule_from_string(rule);
    if (!r) throw JsonFormatError("unknown rule \"" + rule + "\"");
    d.rule = *r;
    d.subject = parse_term(string_field(j, "subject"));
    if (j.contains("env")) {
        const json& env = j.at("env");
        if (!env.is_object()) throw JsonFormatError("field \"env\" must be an object");
        for (const auto& [x, m] : env.items()) {
            if (!m.is_string()) throw JsonFormatError("environment entries must be strings");
            d.env.set(x, parse_imultiset(m.get<std::string>(), names));
        }
    }
    std::string concl = string_field(j, "conclusion");
    if (d.rule == Rule::many) {
        d.conclusion = parse_imultiset(concl, names);
    } else {
        d.conclusion = parse_itype(concl, names);
    }
    if (j.contains("children")) {
        const json& ch = j.at("children");
        if (!ch.is_array()) throw JsonFormatError("field \"children\" must be an array");
        for (const auto& c : ch) d.children.push_back(parse_node(c, names));
    }
    return d;
}

}  // namespace

std::string pd_to_json(const PseudoDerivation& pd, bool ascii, int indent) {
    json out;
    out["system"] = to_string(pd.mode());
    out["root"] = pd_node_json(pd.root(), ascii);
    return dump(out, indent);
}

std::string derivation_to_json(const Derivation& d, Mode system, bool ascii, int indent) {
    json out = derivation_json(d, ascii);
    out["system"] = to_string(system);
    return dump(out, indent);
}

std::string trace_event_to_json(const TraceEvent& e, bool ascii) { return dump(event_json(e, ascii), -1); }

std::string outcome_to_json(const InferOutcome& out, bool with_trace, bool ascii, int indent) {
    json j;
    j["term"] = to_string(out.pd.subject(), ascii);
    j["status"] = to_string(out.status);
    j["expansions"] = out.expansions;
    if (out.ok()) {
        Typing t = final_typing(out);
        j["typing"] = to_string(t, ascii);
        json psi = json::object();
        for (const auto& [v, ty] : out.psi->bindings()) psi[var_name(v)] = to_string(ty, ascii);
        j["psi"] = std::move(psi);
        j["system"] = "strong";
        j["derivation"] = derivation_json(build_checked_derivation(out), ascii);
    }
    if (with_trace) {
        json events = json::array();
        for (const auto& e : out.trace) events.push_back(event_json(e, ascii));
        j["trace"] = std::move(events);
    }
    return dump(j, indent);
}

ParsedDerivation parse_derivation_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw JsonFormatError(std::string("malformed JSON: ") + e.what());
    }
    ParsedDerivation out;
    if (j.is_object() && j.contains("system")) {
        std::string s = string_field(j, "system");
        if (s == "weak") {
            out.system = Mode::weak;
        } else if (s == "strong") {
            out.system = Mode::strong;
        } else {
            throw JsonFormatError("unknown system \"" + s + "\"");
        }
    }
    const json& root = j.is_object() && j.contains("derivation") ? j.at("derivation") : j;
    NameInterner names;
    out.derivation = parse_node(root, names);
    return out;
}

}  // namespace itype
