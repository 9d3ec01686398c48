#include "itype/types.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <unordered_set>

namespace itype {

std::string var_name(VarId id) {
    std::string out(1, static_cast<char>('a' + id % 26));
    if (id >= 26) out += std::to_string(id / 26);
    return out;
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) noexcept {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// PreType

struct PreType::Node {
    bool is_var = true;
    VarId id = 0;
    PreList domain;
    std::optional<PreType> codomain;
    std::size_t hash = 0;
    std::size_t size = 1;
};

PreType PreType::var(VarId id) {
    auto n = std::make_shared<Node>();
    n->is_var = true;
    n->id = id;
    n->hash = mix(0x51ed27, id);
    return PreType(std::move(n));
}

PreType PreType::arrow(PreList domain, PreType codomain) {
    auto n = std::make_shared<Node>();
    n->is_var = false;
    n->hash = mix(mix(0xa770, hash_list(domain)), codomain.hash());
    n->size = 1 + list_size(domain) + codomain.size();
    n->domain = std::move(domain);
    n->codomain = std::move(codomain);
    return PreType(std::move(n));
}

bool PreType::is_var() const noexcept { return node_->is_var; }

VarId PreType::var_id() const {
    if (!is_var()) throw std::logic_error("pre-type is not a variable");
    return node_->id;
}

const PreList& PreType::domain() const {
    if (is_var()) throw std::logic_error("pre-type is not an arrow");
    return node_->domain;
}

const PreType& PreType::codomain() const {
    if (is_var()) throw std::logic_error("pre-type is not an arrow");
    return *node_->codomain;
}

std::size_t PreType::hash() const noexcept { return node_->hash; }
std::size_t PreType::size() const noexcept { return node_->size; }

bool operator==(const PreType& a, const PreType& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.node_->id == b.node_->id;
    return a.domain() == b.domain() && a.codomain() == b.codomain();
}

std::strong_ordering operator<=>(const PreType& a, const PreType& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.is_var()) return a.node_->id <=> b.node_->id;
    if (auto c = std::lexicographical_compare_three_way(a.domain().begin(), a.domain().end(),
                                                        b.domain().begin(), b.domain().end());
        c != 0)
        return c;
    return a.codomain() <=> b.codomain();
}

std::size_t hash_list(const PreList& l) noexcept {
    std::size_t h = mix(0x1157, l.size());
    for (const auto& t : l) h = mix(h, t.hash());
    return h;
}

std::size_t list_size(const PreList& l) noexcept {
    std::size_t s = 1;
    for (const auto& t : l) s += t.size();
    return s;
}

// ---------------------------------------------------------------------------
// PreEnv

PreEnv PreEnv::single(const std::string& x, PreList l) {
    PreEnv e;
    e.set(x, std::move(l));
    return e;
}

const PreList& PreEnv::operator()(const std::string& x) const {
    static const PreList empty;
    auto it = map_.find(x);
    return it == map_.end() ? empty : it->second;
}

PreEnv PreEnv::without(const std::string& x) const {
    PreEnv out = *this;
    out.map_.erase(x);
    return out;
}

PreEnv PreEnv::concat(const PreEnv& other) const {
    PreEnv out = *this;
    for (const auto& [x, l] : other.map_) {
        auto& slot = out.map_[x];
        slot.insert(slot.end(), l.begin(), l.end());
    }
    return out;
}

void PreEnv::set(const std::string& x, PreList l) {
    if (l.empty()) {
        map_.erase(x);
    } else {
        map_[x] = std::move(l);
    }
}

// ---------------------------------------------------------------------------
// IType / IMultiset

struct IType::Node {
    bool is_var = true;
    VarId id = 0;
    IMultiset domain;
    std::optional<IType> codomain;
};

IMultiset::IMultiset(std::vector<IType> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
}

IMultiset IMultiset::unite(const IMultiset& other) const {
    std::vector<IType> out;
    out.reserve(elems_.size() + other.elems_.size());
    std::merge(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
               std::back_inserter(out));
    IMultiset m;
    m.elems_ = std::move(out);
    return m;
}

bool operator==(const IMultiset& a, const IMultiset& b) { return a.elems_ == b.elems_; }

std::strong_ordering operator<=>(const IMultiset& a, const IMultiset& b) {
    return std::lexicographical_compare_three_way(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                                                  b.elems_.end());
}

IType IType::var(VarId id) {
    auto n = std::make_shared<Node>();
    n->id = id;
    return IType(std::move(n));
}

IType IType::arrow(IMultiset domain, IType codomain) {
    auto n = std::make_shared<Node>();
    n->is_var = false;
    n->domain = std::move(domain);
    n->codomain = std::move(codomain);
    return IType(std::move(n));
}

bool IType::is_var() const noexcept { return node_->is_var; }

VarId IType::var_id() const {
    if (!is_var()) throw std::logic_error("type is not a variable");
    return node_->id;
}

const IMultiset& IType::domain() const {
    if (is_var()) throw std::logic_error("type is not an arrow");
    return node_->domain;
}

const IType& IType::codomain() const {
    if (is_var()) throw std::logic_error("type is not an arrow");
    return *node_->codomain;
}

bool operator==(const IType& a, const IType& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const IType& a, const IType& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.is_var()) return a.node_->id <=> b.node_->id;
    if (auto c = a.domain() <=> b.domain(); c != 0) return c;
    return a.codomain() <=> b.codomain();
}

TypeEnv TypeEnv::single(const std::string& x, IMultiset m) {
    TypeEnv e;
    e.set(x, std::move(m));
    return e;
}

const IMultiset& TypeEnv::operator()(const std::string& x) const {
    static const IMultiset empty;
    auto it = map_.find(x);
    return it == map_.end() ? empty : it->second;
}

TypeEnv TypeEnv::without(const std::string& x) const {
    TypeEnv out = *this;
    out.map_.erase(x);
    return out;
}

TypeEnv TypeEnv::unite(const TypeEnv& other) const {
    TypeEnv out = *this;
    for (const auto& [x, m] : other.map_) {
        auto it = out.map_.find(x);
        if (it == out.map_.end()) {
            out.map_.emplace(x, m);
        } else {
            it->second = it->second.unite(m);
        }
    }
    return out;
}

void TypeEnv::set(const std::string& x, IMultiset m) {
    if (m.empty()) {
        map_.erase(x);
    } else {
        map_[x] = std::move(m);
    }
}

// ---------------------------------------------------------------------------
// Substitutions

void PreSubst::bind(VarId v, PreType t) {
    if (t.is_var() && t.var_id() == v) {
        map_.erase(v);
        return;
    }
    map_.insert_or_assign(v, std::move(t));
}

const PreType* PreSubst::find(VarId v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
}

std::set<VarId> PreSubst::domain() const {
    std::set<VarId> out;
    for (const auto& [v, _] : map_) out.insert(v);
    return out;
}

PreSubst PreSubst::unite(const PreSubst& other) const {
    PreSubst out = *this;
    for (const auto& [v, t] : other.map_) {
        auto it = out.map_.find(v);
        if (it != out.map_.end() && !(it->second == t)) {
            throw SubstitutionConflict("substitutions disagree on " + var_name(v));
        }
        out.map_.insert_or_assign(v, t);
    }
    return out;
}

PreSubst PreSubst::compose(const PreSubst& inner) const {
    PreSubst out;
    for (const auto& [v, t] : inner.map_) out.bind(v, apply(*this, t));
    for (const auto& [v, t] : map_) {
        if (!inner.map_.contains(v)) out.bind(v, t);
    }
    return out;
}

bool PreSubst::idempotent() const {
    for (const auto& [v, t] : map_) {
        (void)v;
        for (VarId w : vars(t)) {
            if (map_.contains(w)) return false;
        }
    }
    return true;
}

PreType apply(const PreSubst& s, const PreType& t) {
    if (s.empty()) return t;
    if (t.is_var()) {
        const PreType* b = s.find(t.var_id());
        return b ? *b : t;
    }
    return PreType::arrow(apply(s, t.domain()), apply(s, t.codomain()));
}

PreList apply(const PreSubst& s, const PreList& l) {
    PreList out;
    out.reserve(l.size());
    for (const auto& t : l) out.push_back(apply(s, t));
    return out;
}

PreEnv apply(const PreSubst& s, const PreEnv& e) {
    PreEnv out;
    for (const auto& [x, l] : e.entries()) out.set(x, apply(s, l));
    return out;
}

IType apply(const TypeSubst& s, const IType& t) {
    if (t.is_var()) {
        auto it = s.find(t.var_id());
        return it == s.end() ? t : it->second;
    }
    return IType::arrow(apply(s, t.domain()), apply(s, t.codomain()));
}

IMultiset apply(const TypeSubst& s, const IMultiset& m) {
    std::vector<IType> out;
    out.reserve(m.size());
    for (const auto& t : m.elements()) out.push_back(apply(s, t));
    return IMultiset(std::move(out));
}

TypeEnv apply(const TypeSubst& s, const TypeEnv& e) {
    TypeEnv out;
    for (const auto& [x, m] : e.entries()) out.set(x, apply(s, m));
    return out;
}

IType m_translate(const PreType& t) {
    if (t.is_var()) return IType::var(t.var_id());
    return IType::arrow(m_translate(t.domain()), m_translate(t.codomain()));
}

IMultiset m_translate(const PreList& l) {
    std::vector<IType> out;
    out.reserve(l.size());
    for (const auto& t : l) out.push_back(m_translate(t));
    return IMultiset(std::move(out));
}

TypeEnv m_translate(const PreEnv& e) {
    TypeEnv out;
    for (const auto& [x, l] : e.entries()) out.set(x, m_translate(l));
    return out;
}

namespace {

// Visits every variable occurrence of the roots once per shared node, so
// that heavily shared types (as produced by the u normalizer) stay linear.
// visit returns true to stop early.
template <class Visit>
bool walk_vars(const PreList& roots, Visit&& visit) {
    std::unordered_set<const void*> seen;
    std::vector<const PreType*> stack;
    for (const auto& t : roots) stack.push_back(&t);
    while (!stack.empty()) {
        const PreType* t = stack.back();
        stack.pop_back();
        if (t->is_var()) {
            if (visit(t->var_id())) return true;
            continue;
        }
        if (!seen.insert(t->identity()).second) continue;
        for (const auto& d : t->domain()) stack.push_back(&d);
        stack.push_back(&t->codomain());
    }
    return false;
}

}  // namespace

void collect_vars(const PreType& t, std::set<VarId>& out) { collect_vars(PreList{t}, out); }

void collect_vars(const PreList& l, std::set<VarId>& out) {
    walk_vars(l, [&out](VarId v) {
        out.insert(v);
        return false;
    });
}

std::set<VarId> vars(const PreType& t) {
    std::set<VarId> out;
    collect_vars(t, out);
    return out;
}

std::set<VarId> vars(const PreList& l) {
    std::set<VarId> out;
    collect_vars(l, out);
    return out;
}

namespace {

bool sets_disjoint(const std::set<VarId>& a, const std::set<VarId>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return true;
}

}  // namespace

bool disjoint(const PreType& a, const PreType& b) { return sets_disjoint(vars(a), vars(b)); }
bool disjoint(const PreList& a, const PreList& b) { return sets_disjoint(vars(a), vars(b)); }

bool occurs(VarId v, const PreType& t) {
    if (t.is_var()) return t.var_id() == v;
    return occurs(v, PreList{t});
}

bool occurs(VarId v, const PreList& l) {
    return walk_vars(l, [v](VarId w) { return w == v; });
}

void collect_vars(const IType& t, std::set<VarId>& out) {
    if (t.is_var()) {
        out.insert(t.var_id());
        return;
    }
    for (const auto& e : t.domain().elements()) collect_vars(e, out);
    collect_vars(t.codomain(), out);
}

bool is_strong(const IType& t) {
    if (t.is_var()) return true;
    return is_strong(t.domain()) && is_strong(t.codomain());
}

bool is_strong(const IMultiset& m) {
    if (m.empty()) return false;
    return std::all_of(m.elements().begin(), m.elements().end(),
                       [](const IType& t) { return is_strong(t); });
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

const char* arrow_sym(bool ascii) { return ascii ? "->" : "\xE2\x86\x92"; }

void render(const PreType& t, bool ascii, const VarNamer& namer, std::string& out);

void render_list(const PreList& l, bool ascii, const VarNamer& namer, std::string& out) {
    out += '<';
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i) out += ',';
        render(l[i], ascii, namer, out);
    }
    out += '>';
}

void render(const PreType& t, bool ascii, const VarNamer& namer, std::string& out) {
    if (t.is_var()) {
        out += namer(t.var_id());
        return;
    }
    render_list(t.domain(), ascii, namer, out);
    out += arrow_sym(ascii);
    render(t.codomain(), ascii, namer, out);
}

void render(const IType& t, bool ascii, const VarNamer& namer, std::string& out);

void render_multiset(const IMultiset& m, bool ascii, const VarNamer& namer, std::string& out) {
    out += '[';
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ',';
        render(m.elements()[i], ascii, namer, out);
    }
    out += ']';
}

void render(const IType& t, bool ascii, const VarNamer& namer, std::string& out) {
    if (t.is_var()) {
        out += namer(t.var_id());
        return;
    }
    render_multiset(t.domain(), ascii, namer, out);
    out += arrow_sym(ascii);
    render(t.codomain(), ascii, namer, out);
}

}  // namespace

std::string to_string(const PreType& t, bool ascii, const VarNamer& namer) {
    std::string out;
    render(t, ascii, namer, out);
    return out;
}

std::string to_string(const PreList& l, bool ascii, const VarNamer& namer) {
    std::string out;
    render_list(l, ascii, namer, out);
    return out;
}

std::string to_string(const IType& t, bool ascii, const VarNamer& namer) {
    std::string out;
    render(t, ascii, namer, out);
    return out;
}

std::string to_string(const IMultiset& m, bool ascii, const VarNamer& namer) {
    std::string out;
    render_multiset(m, ascii, namer, out);
    return out;
}

std::string to_string(const PreEnv& e, bool ascii, const VarNamer& namer) {
    std::string out;
    for (const auto& [x, l] : e.entries()) {
        if (!out.empty()) out += ", ";
        out += x + ":" + to_string(l, ascii, namer);
    }
    return out;
}

std::string to_string(const TypeEnv& e, bool ascii, const VarNamer& namer) {
    std::string out;
    for (const auto& [x, m] : e.entries()) {
        if (!out.empty()) out += ", ";
        out += x + ":" + to_string(m, ascii, namer);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CanonicalRenaming

VarId CanonicalRenaming::operator()(VarId v) {
    auto [it, inserted] = map_.emplace(v, static_cast<VarId>(map_.size()));
    (void)inserted;
    return it->second;
}

void CanonicalRenaming::visit(const IType& t) {
    if (t.is_var()) {
        (*this)(t.var_id());
        return;
    }
    visit(t.domain());
    visit(t.codomain());
}

void CanonicalRenaming::visit(const IMultiset& m) {
    for (const auto& t : m.elements()) visit(t);
}

void CanonicalRenaming::visit(const TypeEnv& e) {
    for (const auto& [x, m] : e.entries()) visit(m);
}

void CanonicalRenaming::visit(const PreType& t) {
    if (t.is_var()) {
        (*this)(t.var_id());
        return;
    }
    visit(t.domain());
    visit(t.codomain());
}

void CanonicalRenaming::visit(const PreList& l) {
    for (const auto& t : l) visit(t);
}

TypeSubst CanonicalRenaming::as_type_subst() const {
    TypeSubst s;
    for (const auto& [from, to] : map_) s.emplace(from, IType::var(to));
    return s;
}

PreSubst CanonicalRenaming::as_pre_subst() const {
    PreSubst s;
    for (const auto& [from, to] : map_) s.bind(from, PreType::var(to));
    return s;
}

VarId NameInterner::intern(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    VarId id = next_++;
    ids_.emplace(name, id);
    names_.emplace(id, name);
    return id;
}

std::string NameInterner::name_of(VarId id) const {
    auto it = names_.find(id);
    return it == names_.end() ? var_name(id) : it->second;
}

}  // namespace itype
