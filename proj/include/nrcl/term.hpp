#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nrcl {

enum class VarId : std::uint32_t {};
enum class PredId : std::uint32_t {};

constexpr std::uint32_t raw(VarId v) { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t raw(PredId p) { return static_cast<std::uint32_t>(p); }

// A term is a variable or a constant given by its index in the domain.
// Constants order before variables.
class Term {
public:
    enum class Kind : std::uint8_t { Const = 0, Var = 1 };

    constexpr Term() = default;
    static constexpr Term constant(std::uint32_t index) { return Term(Kind::Const, index); }
    static constexpr Term variable(VarId v) { return Term(Kind::Var, raw(v)); }

    constexpr bool is_var() const { return kind_ == Kind::Var; }
    constexpr bool is_const() const { return kind_ == Kind::Const; }
    constexpr VarId var() const { return VarId{value_}; }
    constexpr std::uint32_t const_index() const { return value_; }

    constexpr auto operator<=>(const Term&) const = default;

private:
    constexpr Term(Kind k, std::uint32_t v) : kind_(k), value_(v) {}
    Kind kind_ = Kind::Const;
    std::uint32_t value_ = 0;
};

using Args = std::vector<Term>;

struct Atom {
    PredId pred{};
    Args args;

    auto operator<=>(const Atom&) const = default;
};

struct Literal {
    bool positive = true;
    Atom atom;

    Literal negated() const { return Literal{!positive, atom}; }
    bool operator==(const Literal&) const = default;
};

// predicate, then polarity (positive first), then arguments
std::strong_ordering operator<=>(const Literal& a, const Literal& b);

// Literals keep construction order; canonical() gives the sorted multiset.
struct Clause {
    std::vector<Literal> lits;

    bool empty() const { return lits.empty(); }
    std::size_t size() const { return lits.size(); }
    Clause canonical() const;
    bool operator==(const Clause&) const = default;
};

// Predicates are numbered in name order so id order equals name order.
class Signature {
public:
    Signature() = default;
    Signature(std::vector<std::pair<std::string, std::size_t>> preds, std::vector<std::string> domain);

    std::size_t pred_count() const { return names_.size(); }
    const std::string& pred_name(PredId p) const { return names_[raw(p)]; }
    std::size_t arity(PredId p) const { return arities_[raw(p)]; }
    std::optional<PredId> find_pred(std::string_view name) const;

    std::size_t domain_size() const { return domain_.size(); }
    const std::vector<std::string>& domain() const { return domain_; }
    const std::string& constant_name(std::uint32_t idx) const { return domain_[idx]; }
    std::optional<std::uint32_t> find_constant(std::string_view name) const;

    // dense numbering of ground atoms: offset(p) + mixed-radix args
    std::size_t atom_count() const { return total_atoms_; }
    std::size_t atom_offset(PredId p) const { return offsets_[raw(p)]; }
    std::size_t atom_code(const Atom& ground) const;
    Atom atom_from_code(std::size_t code) const;

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> arities_;
    std::vector<std::string> domain_;
    std::vector<std::size_t> offsets_;
    std::size_t total_atoms_ = 0;
};

// Variables are numbered per problem; each remembers a base name for display.
class VarPool {
public:
    VarId fresh(std::string_view base);
    VarId fresh_like(VarId v) { return fresh_with_base(base_index_[raw(v)]); }
    const std::string& base_name(VarId v) const { return bases_[base_index_[raw(v)]]; }
    std::size_t size() const { return base_index_.size(); }

private:
    VarId fresh_with_base(std::uint32_t base);
    std::vector<std::uint32_t> base_index_;
    std::vector<std::string> bases_;
};

// Finite map, sorted by variable, never storing x -> x.
// Application is simultaneous (one lookup, no chasing).
class Substitution {
public:
    using Binding = std::pair<VarId, Term>;

    Substitution() = default;
    static Substitution from_bindings(std::vector<Binding> bindings);

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::vector<Binding>& bindings() const { return map_; }

    std::optional<Term> lookup(VarId v) const;
    bool binds(VarId v) const { return lookup(v).has_value(); }
    void bind(VarId v, Term t);  // overwrites; identity binding erases

    Term apply(Term t) const;
    Args apply(std::span<const Term> ts) const;
    Atom apply(const Atom& a) const { return Atom{a.pred, apply(a.args)}; }
    Literal apply(const Literal& l) const { return Literal{l.positive, apply(l.atom)}; }
    Clause apply(const Clause& c) const;

    Substitution restrict(std::span<const VarId> vars) const;
    bool operator==(const Substitution&) const = default;

private:
    std::vector<Binding> map_;
};

// apply sigma first, then tau
Substitution compose(const Substitution& sigma, const Substitution& tau);

// Incremental most general unifier for flat terms.  When both sides are
// variables the first side gets bound.
class Unifier {
public:
    bool unify(Term a, Term b);
    bool unify(std::span<const Term> a, std::span<const Term> b);
    bool unify(const Atom& a, const Atom& b);
    Substitution result() const;

private:
    Term walk(Term t) const;
    std::vector<std::pair<VarId, Term>> bound_;
};

std::optional<Substitution> unify(const Atom& a, const Atom& b);
std::optional<Substitution> unify(std::span<const Term> a, std::span<const Term> b);
// sequential unification of all atoms with the first one
std::optional<Substitution> mgu(std::span<const Atom> atoms);
// unifiability with the variables of `b` read as distinct from those of `a`
bool unifiable_apart(const Atom& a, const Atom& b);

// delta with general*delta == specific; variables of `specific` are rigid
std::optional<Substitution> match_onto(std::span<const Term> general, std::span<const Term> specific);
std::optional<Substitution> match_onto(const Atom& general, const Atom& specific);
std::optional<Substitution> match_onto(const Literal& general, const Literal& specific);
std::optional<Substitution> match_onto(const Clause& general, const Clause& specific);

// distinct variables in first-occurrence order
void collect_vars(std::span<const Term> ts, std::vector<VarId>& out);
std::vector<VarId> vars_of(const Atom& a);
std::vector<VarId> vars_of(const Literal& l);
std::vector<VarId> vars_of(const Clause& c);
bool is_ground(std::span<const Term> ts);
bool is_ground(const Atom& a);

std::vector<Literal> ground_instances(const Literal& l, std::size_t domain_size);
std::vector<Clause> ground_instances(const Clause& c, std::size_t domain_size);

// Fresh variables for every variable of `vars` (same base names).
Substitution fresh_renaming(std::span<const VarId> vars, VarPool& pool);

Clause rename_fresh(const Clause& c, VarPool& pool);
Literal rename_fresh(const Literal& l, VarPool& pool);

}  // namespace nrcl
