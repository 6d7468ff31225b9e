#include "nrcl/constrained.hpp"

#include <algorithm>
#include <set>

namespace nrcl {

std::vector<VarId> free_vars(const Literal& l, const Constraint& pi) {
    auto lv = vars_of(l);
    std::vector<VarId> out;
    for (VarId v : pi.lvars())
        if (std::find(lv.begin(), lv.end(), v) == lv.end()) out.push_back(v);
    return out;
}

namespace {

struct LitLess {
    bool operator()(const Literal& a, const Literal& b) const { return (a <=> b) < 0; }
};

struct ClauseLess {
    bool operator()(const Clause& a, const Clause& b) const {
        return std::lexicographical_compare(a.lits.begin(), a.lits.end(), b.lits.begin(), b.lits.end(), LitLess{});
    }
};

}  // namespace

std::vector<Literal> gnd(const ConstrainedLiteral& cl, std::size_t domain_size) {
    auto vars = vars_of(cl.lit);
    for (VarId v : free_vars(cl.lit, cl.pi)) vars.push_back(v);
    std::set<Literal, LitLess> out;
    for (const auto& s : solutions(cl.pi, vars, domain_size)) out.insert(s.apply(cl.lit));
    return {out.begin(), out.end()};
}

std::vector<Clause> gnd(const ConstrainedClause& cc, std::size_t domain_size) {
    Clause inst = cc.instance();
    auto vars = vars_of(inst);
    auto lv = cc.pi.lvars();
    for (VarId v : lv)
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::set<Clause, ClauseLess> out;
    for (const auto& s : solutions(cc.pi, vars, domain_size)) out.insert(s.apply(inst));
    return {out.begin(), out.end()};
}

bool is_empty(const ConstrainedLiteral& cl, std::size_t domain_size) {
    return !find_solution_enum(cl.pi, vars_of(cl.lit), domain_size).has_value();
}

bool is_empty(const ConstrainedClause& cc, std::size_t domain_size) { return !is_satisfiable(cc.pi, domain_size); }

ConstrainedLiteral rename_apart(const ConstrainedLiteral& cl, VarPool& pool) {
    auto vs = vars_of(cl.lit);
    for (VarId v : cl.pi.lvars())
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    auto r = fresh_renaming(vs, pool);
    return {r.apply(cl.lit), rename_rhs_fresh(cl.pi.apply(r), pool)};
}

ConstrainedLiteral conjunction(const ConstrainedLiteral& cl1, const ConstrainedLiteral& cl2, VarPool& pool) {
    auto other = rename_apart(cl2, pool);
    auto delta = unify(cl1.lit.atom, other.lit.atom);
    if (!delta || cl1.lit.positive != cl2.lit.positive) return {cl1.lit, Constraint::bot()};
    return {delta->apply(cl1.lit), normalize(cl1.pi.apply(*delta).conjoin(other.pi.apply(*delta)))};
}

std::vector<DiffPiece> difference(const ConstrainedLiteral& cl1, const ConstrainedLiteral& cl2, VarPool& pool) {
    auto other = rename_apart(cl2, pool);
    auto delta = unify(other.lit.atom, cl1.lit.atom);
    if (!delta) return {DiffPiece{{}, cl1}};

    std::vector<DiffPiece> out;
    auto lvars = vars_of(cl1.lit);

    // instances of cl1 that are not instances of cl2
    {
        Args u = cl1.lit.atom.args;
        Args ud = delta->apply(u);
        std::vector<VarId> dv;
        collect_vars(ud, dv);
        Substitution rho;
        for (VarId v : dv) rho.bind(v, Term::variable(pool.fresh("v")));
        Constraint pi = cl1.pi;
        pi.add(Disequation{u, rho.apply(ud)});
        pi = normalize(pi);
        if (!pi.is_bot()) out.push_back({{}, {cl1.lit, std::move(pi)}});
    }

    // common instances minus cl2
    Substitution d1 = delta->restrict(lvars);
    Literal la = delta->apply(cl1.lit);
    Constraint pa = cl1.pi.apply(*delta);
    Constraint pb = normalize(other.pi.apply(*delta));
    if (pb.is_top()) return out;
    if (pb.is_bot()) {
        auto pn = normalize(pa);
        if (!pn.is_bot()) out.push_back({d1, {la, std::move(pn)}});
        return out;
    }
    auto sigmas = induced_substitutions(pb);
    const auto& parts = pb.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& si = sigmas[i];
        Constraint pi = pa.apply(si);
        for (std::size_t j = 0; j < i; ++j) pi = pi.conjoin(Constraint::of({parts[j]}).apply(si));
        pi = normalize(pi);
        if (pi.is_bot()) continue;
        out.push_back({compose(d1, si), {si.apply(la), std::move(pi)}});
    }
    return out;
}

namespace {

void elim_into(const Closure& c, std::size_t domain_size, std::vector<Closure>& out) {
    auto fv = free_vars(c.instance(), c.pi);
    if (fv.empty()) {
        out.push_back(c);
        return;
    }
    VarId x = *std::min_element(fv.begin(), fv.end());
    for (std::uint32_t d = 0; d < domain_size; ++d) {
        auto bind = Substitution::from_bindings({{x, Term::constant(d)}});
        Constraint pi = normalize(c.pi.apply(bind));
        if (pi.is_bot()) continue;
        elim_into(Closure{c.base, compose(c.sigma, bind), std::move(pi)}, domain_size, out);
    }
}

}  // namespace

std::vector<Closure> elim_free_vars(const Closure& c, std::size_t domain_size) {
    std::vector<Closure> out;
    Closure start = c;
    start.pi = normalize(c.pi);
    if (start.pi.is_bot()) return out;
    elim_into(start, domain_size, out);
    return out;
}

}  // namespace nrcl
