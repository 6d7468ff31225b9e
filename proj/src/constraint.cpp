#include "nrcl/constraint.hpp"

#include <algorithm>
#include <numeric>

namespace nrcl {

Constraint Constraint::conjoin(const Constraint& other) const {
    if (bot_ || other.bot_) return bot();
    Constraint out = *this;
    out.parts_.insert(out.parts_.end(), other.parts_.begin(), other.parts_.end());
    return out;
}

Constraint Constraint::apply(const Substitution& s) const {
    if (bot_ || s.empty()) return *this;
    Constraint out = *this;
    for (auto& p : out.parts_)
        for (auto& t : p.lhs) t = s.apply(t);
    return out;
}

std::vector<VarId> Constraint::lvars() const {
    std::vector<VarId> out;
    for (const auto& p : parts_) collect_vars(p.lhs, out);
    return out;
}

std::vector<VarId> Constraint::rvars() const {
    std::vector<VarId> out;
    for (const auto& p : parts_) collect_vars(p.rhs, out);
    return out;
}

namespace {

void erase_pos(Disequation& d, std::size_t i) {
    d.lhs.erase(d.lhs.begin() + static_cast<std::ptrdiff_t>(i));
    d.rhs.erase(d.rhs.begin() + static_cast<std::ptrdiff_t>(i));
}

void apply_rhs(Disequation& d, const Substitution& s) {
    for (auto& t : d.rhs) t = s.apply(t);
}

enum class Outcome { Unchanged, Rewritten, DropPart, Bottom };

// rule 8: positions grouped into components linked by shared rhs variables
std::optional<std::vector<std::size_t>> droppable_component(const Disequation& d) {
    std::size_t n = d.lhs.size();
    std::vector<std::size_t> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](std::size_t x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (d.rhs[i].is_var() && d.rhs[i] == d.rhs[j]) comp[find(j)] = find(i);
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(roots.begin(), roots.end(), find(i)) == roots.end()) roots.push_back(find(i));
    if (roots.size() < 2) return std::nullopt;
    for (std::size_t r : roots) {
        Args g, s;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (find(i) == r) {
                members.push_back(i);
                g.push_back(d.rhs[i]);
                s.push_back(d.lhs[i]);
            }
        if (match_onto(g, s)) return members;
    }
    return std::nullopt;
}

Outcome rewrite_once(Disequation& d) {
    const std::size_t n = d.lhs.size();
    // rules 1-3: constant on the left
    for (std::size_t i = 0; i < n; ++i)
        if (d.lhs[i].is_const() && d.rhs[i] == d.lhs[i]) {
            erase_pos(d, i);
            return Outcome::Rewritten;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (d.lhs[i].is_const() && d.rhs[i].is_const()) return Outcome::DropPart;
    for (std::size_t i = 0; i < n; ++i)
        if (d.lhs[i].is_const() && d.rhs[i].is_var()) {
            Term a = d.lhs[i];
            VarId x = d.rhs[i].var();
            erase_pos(d, i);
            apply_rhs(d, Substitution::from_bindings({{x, a}}));
            return Outcome::Rewritten;
        }
    if (n == 0) return Outcome::Bottom;
    // rules 5-6: repeated left variable
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (d.lhs[i] == d.lhs[j]) {
                auto u = unify(std::span<const Term>(&d.rhs[i], 1), std::span<const Term>(&d.rhs[j], 1));
                if (!u) return Outcome::DropPart;
                erase_pos(d, j);
                apply_rhs(d, *u);
                return Outcome::Rewritten;
            }
    if (match_onto(d.rhs, d.lhs)) return Outcome::Bottom;
    if (auto drop = droppable_component(d)) {
        for (auto it = drop->rbegin(); it != drop->rend(); ++it) erase_pos(d, *it);
        return Outcome::Rewritten;
    }
    return Outcome::Unchanged;
}

}  // namespace

Constraint normalize(const Constraint& c) {
    if (c.is_bot()) return c;
    std::vector<Disequation> parts = c.parts();
    for (std::size_t i = 0; i < parts.size();) {
        switch (rewrite_once(parts[i])) {
            case Outcome::Unchanged: ++i; break;
            case Outcome::Rewritten: break;
            case Outcome::DropPart: parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i)); break;
            case Outcome::Bottom: return Constraint::bot();
        }
    }
    std::vector<Disequation> unique;
    for (auto& p : parts)
        if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(std::move(p));
    return Constraint::of(std::move(unique));
}

bool is_normal_form(const Constraint& c) {
    if (c.is_bot()) return true;
    std::vector<VarId> seen_rhs;
    auto lv = c.lvars();
    for (const auto& p : c.parts()) {
        if (p.lhs.size() != p.rhs.size() || p.lhs.empty()) return false;
        std::vector<VarId> local;
        for (Term t : p.lhs) {
            if (!t.is_var()) return false;
            if (std::find(local.begin(), local.end(), t.var()) != local.end()) return false;
            local.push_back(t.var());
        }
        std::vector<VarId> rv;
        collect_vars(p.rhs, rv);
        for (VarId v : rv) {
            if (std::find(lv.begin(), lv.end(), v) != lv.end()) return false;
            if (std::find(seen_rhs.begin(), seen_rhs.end(), v) != seen_rhs.end()) return false;
        }
        seen_rhs.insert(seen_rhs.end(), rv.begin(), rv.end());
    }
    return true;
}

std::vector<Substitution> induced_substitutions(const Constraint& c) {
    if (c.is_bot()) return {Substitution{}};
    std::vector<Substitution> out;
    for (const auto& p : c.parts()) {
        Substitution s;
        for (std::size_t i = 0; i < p.lhs.size(); ++i)
            if (p.lhs[i].is_var()) s.bind(p.lhs[i].var(), p.rhs[i]);
        out.push_back(std::move(s));
    }
    return out;
}

bool violates(const Substitution& delta, const Constraint& c) {
    if (c.is_bot()) return true;
    for (const auto& p : c.parts()) {
        Args inst = delta.apply(p.lhs);
        if (match_onto(p.rhs, inst)) return true;
    }
    return false;
}

std::vector<Substitution> solutions(const Constraint& c, std::span<const VarId> vars, std::size_t domain_size) {
    std::vector<Substitution> out;
    if (c.is_bot()) return out;
    std::vector<std::uint32_t> digit(vars.size(), 0);
    for (;;) {
        Substitution s;
        for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], Term::constant(digit[i]));
        if (!violates(s, c)) out.push_back(std::move(s));
        std::size_t k = vars.size();
        for (;;) {
            if (k == 0) return out;
            --k;
            if (++digit[k] < domain_size) break;
            digit[k] = 0;
        }
    }
}

std::optional<Substitution> find_solution_enum(const Constraint& c, std::span<const VarId> vars,
                                               std::size_t domain_size) {
    if (c.is_bot()) return std::nullopt;
    std::vector<VarId> order(vars.begin(), vars.end());
    for (VarId v : c.lvars())
        if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);

    // only constrained variables are enumerated
    auto lv = c.lvars();
    std::vector<VarId> pos;
    for (VarId v : order)
        if (std::find(lv.begin(), lv.end(), v) != lv.end()) pos.push_back(v);

    struct PartInfo {
        const Disequation* d;
        std::vector<std::size_t> lhs_pos;  // position per lhs entry, or npos for constants
        std::size_t max_pos = 0;
        bool has_var = false;
    };
    constexpr auto npos = static_cast<std::size_t>(-1);
    std::vector<PartInfo> infos;
    for (const auto& p : c.parts()) {
        PartInfo pi{&p, {}, 0, false};
        for (Term t : p.lhs) {
            if (!t.is_var()) {
                pi.lhs_pos.push_back(npos);
                continue;
            }
            auto k = static_cast<std::size_t>(std::find(pos.begin(), pos.end(), t.var()) - pos.begin());
            pi.lhs_pos.push_back(k);
            pi.max_pos = std::max(pi.max_pos, k);
            pi.has_var = true;
        }
        infos.push_back(std::move(pi));
    }

    std::vector<std::uint32_t> digit(pos.size(), 0);
    Args inst;
    auto violated = [&](const PartInfo& pi) {
        inst.clear();
        for (std::size_t i = 0; i < pi.lhs_pos.size(); ++i)
            inst.push_back(pi.lhs_pos[i] == npos ? pi.d->lhs[i] : Term::constant(digit[pi.lhs_pos[i]]));
        return match_onto(pi.d->rhs, inst).has_value();
    };

    for (;;) {
        std::size_t p = npos;
        for (const auto& pi : infos)
            if ((p == npos || pi.max_pos < p) && violated(pi)) p = pi.max_pos;
        if (p == npos) break;
        for (const auto& pi : infos)
            if (!pi.has_var && violated(pi)) return std::nullopt;
        for (std::size_t k = p + 1; k < pos.size(); ++k) digit[k] = 0;
        for (;;) {
            if (++digit[p] < domain_size) break;
            digit[p] = 0;
            if (p == 0) return std::nullopt;
            --p;
        }
    }
    Substitution s;
    for (VarId v : order) s.bind(v, Term::constant(0));
    for (std::size_t k = 0; k < pos.size(); ++k) s.bind(pos[k], Term::constant(digit[k]));
    return s;
}

bool is_satisfiable(const Constraint& c, std::size_t domain_size) {
    return find_solution_enum(c, {}, domain_size).has_value();
}

Constraint rename_rhs_fresh(const Constraint& c, VarPool& pool) {
    if (c.is_bot() || c.is_top()) return c;
    std::vector<Disequation> parts = c.parts();
    for (auto& p : parts) {
        std::vector<VarId> rv;
        collect_vars(p.rhs, rv);
        auto r = fresh_renaming(rv, pool);
        for (auto& t : p.rhs) t = r.apply(t);
    }
    return Constraint::of(std::move(parts));
}

}  // namespace nrcl
