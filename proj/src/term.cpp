#include "nrcl/term.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace nrcl {

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.atom.pred <=> b.atom.pred; c != 0) return c;
    if (a.positive != b.positive) return a.positive ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.atom.args <=> b.atom.args;
}

Clause Clause::canonical() const {
    Clause out = *this;
    std::sort(out.lits.begin(), out.lits.end(), [](const Literal& x, const Literal& y) { return (x <=> y) < 0; });
    return out;
}

Signature::Signature(std::vector<std::pair<std::string, std::size_t>> preds, std::vector<std::string> domain)
    : domain_(std::move(domain)) {
    std::sort(preds.begin(), preds.end());
    for (auto& [name, ar] : preds) {
        if (!names_.empty() && names_.back() == name) throw std::invalid_argument("duplicate predicate " + name);
        names_.push_back(name);
        arities_.push_back(ar);
    }
    if (domain_.empty()) throw std::invalid_argument("empty domain");
    for (std::size_t i = 0; i < arities_.size(); ++i) {
        offsets_.push_back(total_atoms_);
        std::size_t n = 1;
        for (std::size_t k = 0; k < arities_[i]; ++k) {
            if (n > (std::size_t{1} << 40) / domain_.size()) throw std::length_error("atom universe too large");
            n *= domain_.size();
        }
        total_atoms_ += n;
    }
}

std::optional<PredId> Signature::find_pred(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return PredId{static_cast<std::uint32_t>(it - names_.begin())};
}

std::optional<std::uint32_t> Signature::find_constant(std::string_view name) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (domain_[i] == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

std::size_t Signature::atom_code(const Atom& ground) const {
    std::size_t code = 0;
    for (const Term& t : ground.args) {
        assert(t.is_const());
        code = code * domain_.size() + t.const_index();
    }
    return offsets_[raw(ground.pred)] + code;
}

Atom Signature::atom_from_code(std::size_t code) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), code);
    auto p = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    std::size_t rest = code - offsets_[p];
    Atom a{PredId{static_cast<std::uint32_t>(p)}, Args(arities_[p])};
    for (std::size_t k = arities_[p]; k-- > 0;) {
        a.args[k] = Term::constant(static_cast<std::uint32_t>(rest % domain_.size()));
        rest /= domain_.size();
    }
    return a;
}

VarId VarPool::fresh(std::string_view base) {
    auto it = std::find(bases_.begin(), bases_.end(), base);
    std::uint32_t idx;
    if (it == bases_.end()) {
        idx = static_cast<std::uint32_t>(bases_.size());
        bases_.emplace_back(base);
    } else {
        idx = static_cast<std::uint32_t>(it - bases_.begin());
    }
    return fresh_with_base(idx);
}

VarId VarPool::fresh_with_base(std::uint32_t base) {
    base_index_.push_back(base);
    return VarId{static_cast<std::uint32_t>(base_index_.size() - 1)};
}

Substitution Substitution::from_bindings(std::vector<Binding> bindings) {
    Substitution s;
    for (auto& [v, t] : bindings) s.bind(v, t);
    return s;
}

std::optional<Term> Substitution::lookup(VarId v) const {
    auto it = std::lower_bound(map_.begin(), map_.end(), v, [](const Binding& b, VarId x) { return b.first < x; });
    if (it == map_.end() || it->first != v) return std::nullopt;
    return it->second;
}

void Substitution::bind(VarId v, Term t) {
    auto it = std::lower_bound(map_.begin(), map_.end(), v, [](const Binding& b, VarId x) { return b.first < x; });
    bool identity = t.is_var() && t.var() == v;
    if (it != map_.end() && it->first == v) {
        if (identity) map_.erase(it);
        else it->second = t;
    } else if (!identity) {
        map_.insert(it, {v, t});
    }
}

Term Substitution::apply(Term t) const {
    if (!t.is_var() || map_.empty()) return t;
    auto r = lookup(t.var());
    return r ? *r : t;
}

Args Substitution::apply(std::span<const Term> ts) const {
    Args out;
    out.reserve(ts.size());
    for (Term t : ts) out.push_back(apply(t));
    return out;
}

Clause Substitution::apply(const Clause& c) const {
    Clause out;
    out.lits.reserve(c.lits.size());
    for (const auto& l : c.lits) out.lits.push_back(apply(l));
    return out;
}

Substitution Substitution::restrict(std::span<const VarId> vars) const {
    Substitution out;
    for (const auto& b : map_)
        if (std::find(vars.begin(), vars.end(), b.first) != vars.end()) out.map_.push_back(b);
    return out;
}

Substitution compose(const Substitution& sigma, const Substitution& tau) {
    Substitution out;
    for (const auto& [v, t] : sigma.bindings()) out.bind(v, tau.apply(t));
    for (const auto& [v, t] : tau.bindings())
        if (!sigma.binds(v)) out.bind(v, t);
    return out;
}

Term Unifier::walk(Term t) const {
    while (t.is_var()) {
        auto it = std::find_if(bound_.begin(), bound_.end(), [&](const auto& b) { return b.first == t.var(); });
        if (it == bound_.end()) break;
        t = it->second;
    }
    return t;
}

bool Unifier::unify(Term a, Term b) {
    a = walk(a);
    b = walk(b);
    if (a == b) return true;
    if (a.is_var()) {
        bound_.emplace_back(a.var(), b);
        return true;
    }
    if (b.is_var()) {
        bound_.emplace_back(b.var(), a);
        return true;
    }
    return false;
}

bool Unifier::unify(std::span<const Term> a, std::span<const Term> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!unify(a[i], b[i])) return false;
    return true;
}

bool Unifier::unify(const Atom& a, const Atom& b) {
    return a.pred == b.pred && unify(std::span<const Term>(a.args), std::span<const Term>(b.args));
}

Substitution Unifier::result() const {
    Substitution s;
    for (const auto& b : bound_) s.bind(b.first, walk(Term::variable(b.first)));
    return s;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
    Unifier u;
    if (!u.unify(a, b)) return std::nullopt;
    return u.result();
}

std::optional<Substitution> unify(std::span<const Term> a, std::span<const Term> b) {
    Unifier u;
    if (!u.unify(a, b)) return std::nullopt;
    return u.result();
}

std::optional<Substitution> mgu(std::span<const Atom> atoms) {
    Unifier u;
    for (std::size_t i = 1; i < atoms.size(); ++i)
        if (!u.unify(atoms[0], atoms[i])) return std::nullopt;
    return u.result();
}

bool unifiable_apart(const Atom& a, const Atom& b) {
    if (a.pred != b.pred) return false;
    constexpr std::uint32_t kShift = 0x80000000u;
    Args shifted = b.args;
    for (Term& t : shifted)
        if (t.is_var()) t = Term::variable(VarId{raw(t.var()) | kShift});
    Unifier u;
    return u.unify(std::span<const Term>(a.args), std::span<const Term>(shifted));
}

namespace {

bool match_into(std::span<const Term> general, std::span<const Term> specific, std::vector<std::pair<VarId, Term>>& m) {
    if (general.size() != specific.size()) return false;
    for (std::size_t i = 0; i < general.size(); ++i) {
        Term g = general[i];
        Term s = specific[i];
        if (!g.is_var()) {
            if (g != s) return false;
            continue;
        }
        auto it = std::find_if(m.begin(), m.end(), [&](const auto& b) { return b.first == g.var(); });
        if (it == m.end()) m.emplace_back(g.var(), s);
        else if (it->second != s) return false;
    }
    return true;
}

Substitution finish(const std::vector<std::pair<VarId, Term>>& m) {
    Substitution s;
    for (const auto& [v, t] : m) s.bind(v, t);
    return s;
}

}  // namespace

std::optional<Substitution> match_onto(std::span<const Term> general, std::span<const Term> specific) {
    std::vector<std::pair<VarId, Term>> m;
    if (!match_into(general, specific, m)) return std::nullopt;
    return finish(m);
}

std::optional<Substitution> match_onto(const Atom& general, const Atom& specific) {
    if (general.pred != specific.pred) return std::nullopt;
    return match_onto(std::span<const Term>(general.args), std::span<const Term>(specific.args));
}

std::optional<Substitution> match_onto(const Literal& general, const Literal& specific) {
    if (general.positive != specific.positive) return std::nullopt;
    return match_onto(general.atom, specific.atom);
}

std::optional<Substitution> match_onto(const Clause& general, const Clause& specific) {
    if (general.size() != specific.size()) return std::nullopt;
    std::vector<std::pair<VarId, Term>> m;
    for (std::size_t i = 0; i < general.size(); ++i) {
        const auto& g = general.lits[i];
        const auto& s = specific.lits[i];
        if (g.positive != s.positive || g.atom.pred != s.atom.pred) return std::nullopt;
        if (!match_into(g.atom.args, s.atom.args, m)) return std::nullopt;
    }
    return finish(m);
}

void collect_vars(std::span<const Term> ts, std::vector<VarId>& out) {
    for (Term t : ts)
        if (t.is_var() && std::find(out.begin(), out.end(), t.var()) == out.end()) out.push_back(t.var());
}

std::vector<VarId> vars_of(const Atom& a) {
    std::vector<VarId> out;
    collect_vars(a.args, out);
    return out;
}

std::vector<VarId> vars_of(const Literal& l) { return vars_of(l.atom); }

std::vector<VarId> vars_of(const Clause& c) {
    std::vector<VarId> out;
    for (const auto& l : c.lits) collect_vars(l.atom.args, out);
    return out;
}

bool is_ground(std::span<const Term> ts) {
    return std::none_of(ts.begin(), ts.end(), [](Term t) { return t.is_var(); });
}

bool is_ground(const Atom& a) { return is_ground(a.args); }

namespace {

template <class Expr>
std::vector<Expr> instances_of(const Expr& e, const std::vector<VarId>& vars, std::size_t n) {
    std::vector<Expr> out;
    std::vector<std::uint32_t> digit(vars.size(), 0);
    for (;;) {
        Substitution s;
        for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], Term::constant(digit[i]));
        out.push_back(s.apply(e));
        std::size_t k = vars.size();
        while (k > 0) {
            --k;
            if (++digit[k] < n) break;
            digit[k] = 0;
            if (k == 0) return out;
        }
        if (vars.empty()) return out;
    }
}

}  // namespace

std::vector<Literal> ground_instances(const Literal& l, std::size_t domain_size) {
    return instances_of(l, vars_of(l), domain_size);
}

std::vector<Clause> ground_instances(const Clause& c, std::size_t domain_size) {
    return instances_of(c, vars_of(c), domain_size);
}

Substitution fresh_renaming(std::span<const VarId> vars, VarPool& pool) {
    Substitution r;
    for (VarId v : vars) r.bind(v, Term::variable(pool.fresh_like(v)));
    return r;
}

Clause rename_fresh(const Clause& c, VarPool& pool) {
    auto vs = vars_of(c);
    return fresh_renaming(vs, pool).apply(c);
}

Literal rename_fresh(const Literal& l, VarPool& pool) {
    auto vs = vars_of(l);
    return fresh_renaming(vs, pool).apply(l);
}

}  // namespace nrcl
