#include "itype/checker.hpp"

#include <algorithm>

#include "itype/reduction.hpp"

namespace itype {

std::string to_string(const ValidationReport& r) {
    std::string out;
    for (const auto& v : r.violations) out += v.path + ": " + v.message + "\n";
    return out;
}

namespace {

bool strong_env(const TypeEnv& e) {
    for (const auto& [x, m] : e.entries()) {
        if (!is_strong(m)) return false;
    }
    return true;
}

class Validator {
public:
    explicit Validator(Mode system) : system_(system) {}

    void check(const Derivation& d, std::string path) {
        auto fail = [&](const std::string& msg) { report_.violations.push_back({path, msg}); };
        const bool strong = system_ == Mode::strong;

        if (strong) {
            if (!strong_env(d.env)) fail("environment contains a type with an empty multiset");
            if (d.concludes_multiset()) {
                for (const auto& t : std::get<IMultiset>(d.conclusion).elements()) {
                    if (!is_strong(t)) fail("conclusion contains an empty multiset");
                }
            } else if (!is_strong(std::get<IType>(d.conclusion))) {
                fail("conclusion contains an empty multiset");
            }
        }

        bool shape_ok = true;
        auto type_of = [&](const Derivation& c) -> const IType* {
            if (c.concludes_multiset()) return nullptr;
            return &std::get<IType>(c.conclusion);
        };

        if (d.rule != Rule::many && d.concludes_multiset()) {
            fail(to_string(d.rule) + " concludes a multiset");
            shape_ok = false;
        }
        if (d.rule == Rule::many && !d.concludes_multiset()) {
            fail("many concludes a single type");
            shape_ok = false;
        }

        switch (d.rule) {
        case Rule::var: {
            if (!d.subject.is_var()) fail("var rule over a non-variable");
            if (!d.children.empty()) fail("var rule with premises");
            if (!shape_ok || !d.subject.is_var()) break;
            const IType& a = std::get<IType>(d.conclusion);
            TypeEnv expected = TypeEnv::single(d.subject.name(), IMultiset({a}));
            if (!(d.env == expected)) fail("axiom environment must be exactly " + d.subject.name() + ":[A]");
            break;
        }
        case Rule::abs:
        case Rule::abs_i:
        case Rule::abs_k: {
            if (strong && d.rule == Rule::abs) fail("rule abs is not part of the strong system");
            if (!strong && d.rule != Rule::abs) fail(to_string(d.rule) + " is not part of the weak system");
            if (!d.subject.is_abs()) {
                fail("abstraction rule over a non-abstraction");
                break;
            }
            if (d.children.size() != 1) {
                fail("abstraction rule needs exactly one premise");
                break;
            }
            const Derivation& c = d.children[0];
            if (!identical(c.subject, d.subject.body())) fail("premise subject is not the abstraction body");
            const IType* a = type_of(c);
            if (!a) {
                fail("premise concludes a multiset");
                break;
            }
            if (!shape_ok) break;
            const std::string& x = d.subject.name();
            const IType& concl = std::get<IType>(d.conclusion);
            if (d.rule == Rule::abs_k) {
                if (c.env.in_domain(x)) fail("abs-K binder occurs in the premise environment");
                if (!(d.env == c.env)) fail("abs-K environment differs from the premise environment");
                if (!concl.is_arrow() || concl.domain().size() != 1 || !(concl.codomain() == *a)) {
                    fail("abs-K conclusion must be [B] -> A with A the premise type");
                } else if (!is_strong(concl.domain().elements()[0])) {
                    fail("abs-K domain type is not strong");
                }
            } else {
                if (d.rule == Rule::abs_i && !c.env.in_domain(x)) fail("abs-I binder absent from the premise environment");
                if (!(d.env == c.env.without(x))) fail("environment is not the premise environment without the binder");
                IType expected = IType::arrow(c.env(x), *a);
                if (!(concl == expected)) fail("conclusion must be Gamma(x) -> A");
            }
            break;
        }
        case Rule::many: {
            if (strong && d.children.empty()) fail("many with no premises in the strong system");
            TypeEnv env;
            std::vector<IType> types;
            bool premises_ok = true;
            for (const auto& c : d.children) {
                if (!identical(c.subject, d.subject)) fail("premise subject differs from the many subject");
                const IType* t = type_of(c);
                if (!t) {
                    fail("many premise concludes a multiset");
                    premises_ok = false;
                    continue;
                }
                types.push_back(*t);
                env = env.unite(c.env);
            }
            if (!shape_ok || !premises_ok) break;
            if (!(std::get<IMultiset>(d.conclusion) == IMultiset(types))) {
                fail("conclusion is not the multiset of premise types");
            }
            if (!(d.env == env)) fail("environment is not the union of premise environments");
            break;
        }
        case Rule::app: {
            if (!d.subject.is_app()) {
                fail("app rule over a non-application");
                break;
            }
            if (d.children.size() != 2) {
                fail("app rule needs exactly two premises");
                break;
            }
            const Derivation& f = d.children[0];
            const Derivation& a = d.children[1];
            if (!identical(f.subject, d.subject.function())) fail("left premise subject is not the function");
            if (!identical(a.subject, d.subject.argument())) fail("right premise subject is not the argument");
            if (a.rule != Rule::many || !a.concludes_multiset()) fail("right premise must be a many judgement");
            const IType* ft = type_of(f);
            if (!ft || !ft->is_arrow()) {
                fail("function premise must have an arrow type");
                break;
            }
            if (!shape_ok || !a.concludes_multiset()) break;
            if (!(ft->domain() == std::get<IMultiset>(a.conclusion))) {
                fail("argument multiset does not match the arrow domain");
            }
            if (!(std::get<IType>(d.conclusion) == ft->codomain())) fail("conclusion is not the arrow codomain");
            if (!(d.env == f.env.unite(a.env))) fail("environment is not the union of premise environments");
            break;
        }
        }

        for (std::size_t i = 0; i < d.children.size(); ++i) {
            check(d.children[i], path == "/" ? "/" + std::to_string(i) : path + "/" + std::to_string(i));
        }
    }

    ValidationReport take() { return std::move(report_); }

private:
    Mode system_;
    ValidationReport report_;
};

Derivation make(Rule rule, const Term& subject, TypeEnv env, std::variant<IType, IMultiset> concl,
                std::vector<Derivation> children) {
    Derivation d;
    d.rule = rule;
    d.subject = subject;
    d.env = std::move(env);
    d.conclusion = std::move(concl);
    d.children = std::move(children);
    return d;
}

Derivation derive_nf(const Term& t, VarSupply& fresh) {
    if (t.is_var()) {
        IType a = IType::var(fresh.fresh());
        return make(Rule::var, t, TypeEnv::single(t.name(), IMultiset({a})), a, {});
    }
    if (t.is_abs()) {
        Derivation body = derive_nf(t.body(), fresh);
        const IType a = std::get<IType>(body.conclusion);
        const std::string& x = t.name();
        if (body.env.in_domain(x)) {
            IType concl = IType::arrow(body.env(x), a);
            TypeEnv env = body.env.without(x);
            return make(Rule::abs_i, t, std::move(env), concl, {std::move(body)});
        }
        IType concl = IType::arrow(IMultiset({IType::var(fresh.fresh())}), a);
        TypeEnv env = body.env;
        return make(Rule::abs_k, t, std::move(env), concl, {std::move(body)});
    }
    // x K1 ... Kn: collect the spine.
    std::vector<Term> args;
    const Term* head = &t;
    while (head->is_app()) {
        args.push_back(head->argument());
        head = &head->function();
    }
    std::reverse(args.begin(), args.end());
    std::vector<Derivation> arg_ders;
    for (const auto& k : args) arg_ders.push_back(derive_nf(k, fresh));
    IType result = IType::var(fresh.fresh());
    IType head_type = result;
    for (std::size_t i = args.size(); i-- > 0;) {
        head_type = IType::arrow(IMultiset({std::get<IType>(arg_ders[i].conclusion)}), head_type);
    }
    Derivation cur = make(Rule::var, *head, TypeEnv::single(head->name(), IMultiset({head_type})), head_type, {});
    Term subject = *head;
    for (std::size_t i = 0; i < args.size(); ++i) {
        subject = Term::app(subject, args[i]);
        const IType ft = std::get<IType>(cur.conclusion);
        Derivation many = make(Rule::many, args[i], arg_ders[i].env, ft.domain(), {arg_ders[i]});
        TypeEnv env = cur.env.unite(many.env);
        IType concl = ft.codomain();
        cur = make(Rule::app, subject, std::move(env), concl, {std::move(cur), std::move(many)});
    }
    return cur;
}

void render(const Derivation& d, std::size_t depth, bool ascii, std::string& out) {
    out += std::string(2 * depth, ' ');
    out += to_string(d.rule) + ": ";
    std::string env = to_string(d.env, ascii);
    out += env;
    out += env.empty() ? "" : " ";
    out += ascii ? "|- " : "\xE2\x8A\xA2 ";
    out += to_string(d.subject, ascii) + " : ";
    if (d.concludes_multiset()) {
        out += to_string(std::get<IMultiset>(d.conclusion), ascii);
    } else {
        out += to_string(std::get<IType>(d.conclusion), ascii);
    }
    out += '\n';
    for (const auto& c : d.children) render(c, depth + 1, ascii, out);
}

}  // namespace

ValidationReport validate(const Derivation& d, Mode system) {
    Validator v(system);
    v.check(d, "/");
    return v.take();
}

Derivation derive_normal_form(const Term& t, VarId first_fresh) {
    if (!is_normal_form(t)) throw std::invalid_argument("derive_normal_form needs a term in normal form");
    VarSupply fresh(first_fresh);
    return derive_nf(t, fresh);
}

Derivation apply(const TypeSubst& phi, const Derivation& d) {
    Derivation out;
    out.rule = d.rule;
    out.subject = d.subject;
    out.env = apply(phi, d.env);
    if (d.concludes_multiset()) {
        out.conclusion = apply(phi, std::get<IMultiset>(d.conclusion));
    } else {
        out.conclusion = apply(phi, std::get<IType>(d.conclusion));
    }
    for (const auto& c : d.children) out.children.push_back(apply(phi, c));
    return out;
}

void collect_vars(const Derivation& d, std::set<VarId>& out) {
    for (const auto& [x, m] : d.env.entries()) {
        for (const auto& t : m.elements()) collect_vars(t, out);
    }
    if (d.concludes_multiset()) {
        for (const auto& t : std::get<IMultiset>(d.conclusion).elements()) collect_vars(t, out);
    } else {
        collect_vars(std::get<IType>(d.conclusion), out);
    }
    for (const auto& c : d.children) collect_vars(c, out);
}

std::string to_string(const Derivation& d, bool ascii) {
    std::string out;
    render(d, 0, ascii, out);
    return out;
}

}  // namespace itype
