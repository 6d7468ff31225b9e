#pragma once

// Straight-from-definition reference semantics used as oracles by the tests.
// Nothing here calls the library's own solution or Gnd machinery.

#include "nrcl/constrained.hpp"
#include "nrcl/io.hpp"
#include "nrcl/render.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace nrcl::test {

using Ground = std::map<VarId, std::uint32_t>;
using Tuple = std::vector<std::uint32_t>;

inline std::uint32_t value_of(Term t, const Ground& g) { return t.is_const() ? t.const_index() : g.at(t.var()); }

// one disequation is violated iff its right side, as a pattern, matches the
// grounded left side
inline bool part_violated(const Disequation& d, const Ground& g) {
    std::map<VarId, std::uint32_t> bind;
    for (std::size_t i = 0; i < d.lhs.size(); ++i) {
        std::uint32_t v = value_of(d.lhs[i], g);
        const Term& r = d.rhs[i];
        if (r.is_const()) {
            if (r.const_index() != v) return false;
        } else if (auto [it, fresh] = bind.emplace(r.var(), v); !fresh && it->second != v) {
            return false;
        }
    }
    return true;
}

inline bool solves(const Constraint& c, const Ground& g) {
    if (c.is_bot()) return false;
    for (const auto& d : c.parts())
        if (part_violated(d, g)) return false;
    return true;
}

inline void for_each_grounding(const std::vector<VarId>& vars, std::size_t n, const std::function<void(const Ground&)>& f) {
    Ground g;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            f(g);
            return;
        }
        for (std::uint32_t d = 0; d < n; ++d) {
            g[vars[i]] = d;
            rec(i + 1);
        }
    };
    rec(0);
}

inline std::vector<VarId> left_vars(const Constraint& c) {
    std::set<VarId> s;
    for (const auto& d : c.parts())
        for (Term t : d.lhs)
            if (t.is_var()) s.insert(t.var());
    return {s.begin(), s.end()};
}

inline std::vector<VarId> union_vars(std::vector<VarId> a, const std::vector<VarId>& b) {
    for (VarId v : b)
        if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
    return a;
}

inline std::set<Tuple> solution_set(const Constraint& c, const std::vector<VarId>& vars, std::size_t n) {
    std::set<Tuple> out;
    for_each_grounding(vars, n, [&](const Ground& g) {
        if (!solves(c, g)) return;
        Tuple t;
        for (VarId v : vars) t.push_back(g.at(v));
        out.insert(t);
    });
    return out;
}

// atom argument tuples covered by (L; pi); free left variables existential
inline std::set<Tuple> gnd_atoms(const Atom& a, const Constraint& pi, std::size_t n) {
    std::vector<VarId> vars = union_vars(vars_of(a), left_vars(pi));
    std::set<Tuple> out;
    for_each_grounding(vars, n, [&](const Ground& g) {
        if (!solves(pi, g)) return;
        Tuple t;
        for (Term x : a.args) t.push_back(value_of(x, g));
        out.insert(t);
    });
    return out;
}
inline std::set<Tuple> gnd_atoms(const ConstrainedLiteral& cl, std::size_t n) { return gnd_atoms(cl.lit.atom, cl.pi, n); }

inline ConstrainedLiteral cl(std::string_view text, const Signature& sig, VarPool& pool) {
    return parse_constrained_literal(text, sig, pool);
}

inline std::string show(const ConstrainedLiteral& c, const Signature& sig, const VarPool& pool) {
    return render(c, sig, pool);
}

// Random constraint over the given left variables.  Right-hand variables are
// fresh per part.  Raw mode also puts constants and repeated variables on the
// left.
struct ConstraintGen {
    std::mt19937_64 rng;
    std::size_t domain = 3;
    std::size_t max_parts = 4;
    std::size_t max_width = 3;
    bool raw = false;

    explicit ConstraintGen(std::uint64_t seed) : rng(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }
    Term constant() { return Term::constant(static_cast<std::uint32_t>(below(domain))); }

    Constraint make(const std::vector<VarId>& left, VarPool& pool) {
        Constraint c;
        if (left.empty() && !raw) return c;
        std::size_t parts = below(max_parts + 1);
        for (std::size_t p = 0; p < parts; ++p) {
            std::size_t width = 1 + below(max_width);
            Disequation d;
            std::vector<VarId> rhs_vars;
            for (std::size_t i = 0; i < width; ++i) {
                if (left.empty() || (raw && chance(0.2))) d.lhs.push_back(constant());
                else d.lhs.push_back(Term::variable(left[below(left.size())]));
                if (chance(0.4)) {
                    d.rhs.push_back(constant());
                } else if (!rhs_vars.empty() && chance(0.5)) {
                    d.rhs.push_back(Term::variable(rhs_vars[below(rhs_vars.size())]));
                } else {
                    rhs_vars.push_back(pool.fresh("v"));
                    d.rhs.push_back(Term::variable(rhs_vars.back()));
                }
            }
            if (!raw) {
                // keep the part in normal form: distinct left variables
                std::set<VarId> seen;
                Disequation nd;
                for (std::size_t i = 0; i < d.lhs.size(); ++i)
                    if (d.lhs[i].is_var() && seen.insert(d.lhs[i].var()).second) {
                        nd.lhs.push_back(d.lhs[i]);
                        nd.rhs.push_back(d.rhs[i]);
                    }
                d = std::move(nd);
            }
            c.add(std::move(d));
        }
        return c;
    }

    // atom over `vars`, occasionally with constants
    Atom atom(PredId p, std::size_t arity, const std::vector<VarId>& vars) {
        Atom a{p, {}};
        for (std::size_t i = 0; i < arity; ++i) {
            if (chance(0.25)) a.args.push_back(constant());
            else a.args.push_back(Term::variable(vars[below(vars.size())]));
        }
        return a;
    }
};

}  // namespace nrcl::test
