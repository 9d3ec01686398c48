#ifndef ITYPE_TYPES_HPP
#define ITYPE_TYPES_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace itype {

// Pre-type variables and type variables share one namespace of
// counter-generated identifiers; m is the identity on them.
using VarId = std::uint32_t;

// Display name of a variable: a..z, then a1..z1, a2, ...
std::string var_name(VarId id);

class VarSupply {
public:
    explicit VarSupply(VarId first = 0) : next_(first) {}
    VarId fresh() { return next_++; }
    VarId peek() const noexcept { return next_; }

private:
    VarId next_;
};

// ---------------------------------------------------------------------------
// Pre-types over ordered lists.

class PreType;
using PreList = std::vector<PreType>;

class PreType {
public:
    static PreType var(VarId id);
    static PreType arrow(PreList domain, PreType codomain);

    bool is_var() const noexcept;
    bool is_arrow() const noexcept { return !is_var(); }
    VarId var_id() const;
    const PreList& domain() const;
    const PreType& codomain() const;

    std::size_t hash() const noexcept;
    // Symbol count: variables, arrows and list brackets.
    std::size_t size() const noexcept;

    bool same_node(const PreType& o) const noexcept { return node_ == o.node_; }
    // Address of the shared node; lets traversals skip shared subterms.
    const void* identity() const noexcept { return node_.get(); }

    friend bool operator==(const PreType& a, const PreType& b);
    friend std::strong_ordering operator<=>(const PreType& a, const PreType& b);

private:
    struct Node;
    explicit PreType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

std::size_t hash_list(const PreList& l) noexcept;
std::size_t list_size(const PreList& l) noexcept;

// Finitely supported map from term variables to lists; entries mapped to the
// empty list are never stored, so dom() is the key set.
class PreEnv {
public:
    PreEnv() = default;
    static PreEnv single(const std::string& x, PreList l);

    const PreList& operator()(const std::string& x) const;
    bool in_domain(const std::string& x) const { return map_.contains(x); }
    PreEnv without(const std::string& x) const;
    // Pointwise concatenation.
    PreEnv concat(const PreEnv& other) const;

    const std::map<std::string, PreList>& entries() const noexcept { return map_; }
    bool empty() const noexcept { return map_.empty(); }
    void set(const std::string& x, PreList l);

    friend bool operator==(const PreEnv&, const PreEnv&) = default;

private:
    std::map<std::string, PreList> map_;
};

// ---------------------------------------------------------------------------
// Intersection types over multisets.

class IType;

// Multiset of types, kept sorted under the total order on IType so that
// equality is permutation-blind and multiplicity-aware.
class IMultiset {
public:
    IMultiset() = default;
    explicit IMultiset(std::vector<IType> elems);

    const std::vector<IType>& elements() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    // Multiset union.
    IMultiset unite(const IMultiset& other) const;

    friend bool operator==(const IMultiset& a, const IMultiset& b);
    friend std::strong_ordering operator<=>(const IMultiset& a, const IMultiset& b);

private:
    std::vector<IType> elems_;
};

class IType {
public:
    static IType var(VarId id);
    static IType arrow(IMultiset domain, IType codomain);

    bool is_var() const noexcept;
    bool is_arrow() const noexcept { return !is_var(); }
    VarId var_id() const;
    const IMultiset& domain() const;
    const IType& codomain() const;

    // Arrows order before variables; variables by id; arrows by
    // (domain, codomain).
    friend bool operator==(const IType& a, const IType& b);
    friend std::strong_ordering operator<=>(const IType& a, const IType& b);

private:
    struct Node;
    explicit IType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

class TypeEnv {
public:
    TypeEnv() = default;
    static TypeEnv single(const std::string& x, IMultiset m);

    const IMultiset& operator()(const std::string& x) const;
    bool in_domain(const std::string& x) const { return map_.contains(x); }
    TypeEnv without(const std::string& x) const;
    // Pointwise multiset union.
    TypeEnv unite(const TypeEnv& other) const;

    const std::map<std::string, IMultiset>& entries() const noexcept { return map_; }
    bool empty() const noexcept { return map_.empty(); }
    void set(const std::string& x, IMultiset m);

    friend bool operator==(const TypeEnv&, const TypeEnv&) = default;

private:
    std::map<std::string, IMultiset> map_;
};

// ---------------------------------------------------------------------------
// Substitutions.

class SubstitutionConflict : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Finitely supported map V_p -> T_p; identity bindings are never stored.
class PreSubst {
public:
    PreSubst() = default;

    void bind(VarId v, PreType t);
    const PreType* find(VarId v) const;
    const std::map<VarId, PreType>& bindings() const noexcept { return map_; }
    std::set<VarId> domain() const;
    bool empty() const noexcept { return map_.empty(); }

    // Union of compatible substitutions; throws SubstitutionConflict if both
    // bind some variable differently.
    PreSubst unite(const PreSubst& other) const;
    // (this ∘ inner)(a) = this(inner(a)).
    PreSubst compose(const PreSubst& inner) const;
    // No domain variable occurs in any bound type.
    bool idempotent() const;

    friend bool operator==(const PreSubst&, const PreSubst&) = default;

private:
    std::map<VarId, PreType> map_;
};

// Finitely supported map V -> T on intersection-type variables.
using TypeSubst = std::map<VarId, IType>;

PreType apply(const PreSubst& s, const PreType& t);
PreList apply(const PreSubst& s, const PreList& l);
PreEnv apply(const PreSubst& s, const PreEnv& e);

IType apply(const TypeSubst& s, const IType& t);
IMultiset apply(const TypeSubst& s, const IMultiset& m);
TypeEnv apply(const TypeSubst& s, const TypeEnv& e);

// m: lists collapse to multisets.
IType m_translate(const PreType& t);
IMultiset m_translate(const PreList& l);
TypeEnv m_translate(const PreEnv& e);

void collect_vars(const PreType& t, std::set<VarId>& out);
void collect_vars(const PreList& l, std::set<VarId>& out);
std::set<VarId> vars(const PreType& t);
std::set<VarId> vars(const PreList& l);
bool disjoint(const PreType& a, const PreType& b);
bool disjoint(const PreList& a, const PreList& b);
bool occurs(VarId v, const PreType& t);
bool occurs(VarId v, const PreList& l);

void collect_vars(const IType& t, std::set<VarId>& out);

// Membership in T_s: no empty multiset anywhere inside.
bool is_strong(const IType& t);
bool is_strong(const IMultiset& m);

// ---------------------------------------------------------------------------
// Rendering. Multisets print as [A1,...,An], lists as <A1,...,An>, arrows
// right-associative with → (or -> in ASCII mode).

using VarNamer = std::function<std::string(VarId)>;

std::string to_string(const PreType& t, bool ascii = false, const VarNamer& namer = var_name);
std::string to_string(const PreList& l, bool ascii = false, const VarNamer& namer = var_name);
std::string to_string(const IType& t, bool ascii = false, const VarNamer& namer = var_name);
std::string to_string(const IMultiset& m, bool ascii = false, const VarNamer& namer = var_name);
std::string to_string(const PreEnv& e, bool ascii = false, const VarNamer& namer = var_name);
std::string to_string(const TypeEnv& e, bool ascii = false, const VarNamer& namer = var_name);

// Renames type variables to 0, 1, 2, ... in order of first occurrence while
// walking `seed` items in sequence. Used to print typings "up to renaming".
class CanonicalRenaming {
public:
    VarId operator()(VarId v);
    void visit(const IType& t);
    void visit(const IMultiset& m);
    void visit(const TypeEnv& e);
    void visit(const PreType& t);
    void visit(const PreList& l);
    TypeSubst as_type_subst() const;
    PreSubst as_pre_subst() const;
    const std::map<VarId, VarId>& mapping() const noexcept { return map_; }

private:
    std::map<VarId, VarId> map_;
};

// ---------------------------------------------------------------------------
// Parsing of the textual rendering. Variable names are interned in order of
// first appearance unless they already appear in the interner.

class ParseError;

class NameInterner {
public:
    explicit NameInterner(VarId first = 0) : next_(first) {}
    VarId intern(const std::string& name);
    std::string name_of(VarId id) const;
    VarId next() const noexcept { return next_; }

private:
    std::map<std::string, VarId> ids_;
    std::map<VarId, std::string> names_;
    VarId next_;
};

PreType parse_pretype(std::string_view text, NameInterner& names);
PreList parse_prelist(std::string_view text, NameInterner& names);
IType parse_itype(std::string_view text, NameInterner& names);
IMultiset parse_imultiset(std::string_view text, NameInterner& names);

}  // namespace itype

#endif  // ITYPE_TYPES_HPP
