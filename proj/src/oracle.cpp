#include "nrcl/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace nrcl {

GroundClause encode_clause(const Signature& sig, const Clause& ground) {
    GroundClause out;
    out.reserve(ground.size());
    for (const auto& l : ground.lits) out.push_back(encode(sig.atom_code(l.atom), l.positive));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// odometer over |D|^vars groundings of a clause
template <class F>
void for_each_grounding(const Clause& c, std::size_t domain_size, F&& f) {
    auto vars = vars_of(c);
    std::vector<std::uint32_t> digits(vars.size(), 0);
    while (true) {
        Substitution s;
        for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], Term::constant(digits[i]));
        f(s.apply(c));
        std::size_t i = vars.size();
        while (i > 0 && ++digits[i - 1] == domain_size) digits[--i] = 0;
        if (i == 0) return;
    }
}

std::size_t instance_count(const Clause& c, std::size_t domain_size, std::size_t cap) {
    std::size_t n = 1;
    for (std::size_t i = vars_of(c).size(); i > 0; --i) {
        if (n > cap / domain_size) return cap + 1;
        n *= domain_size;
    }
    return n;
}

}  // namespace

GroundProblem ground_problem(const Signature& sig, std::span<const Clause> clauses, const OracleLimits& lim) {
    GroundProblem gp;
    gp.atom_count = sig.atom_count();
    std::size_t total = 0;
    for (const auto& c : clauses) {
        total += instance_count(c, sig.domain_size(), lim.max_ground_clauses);
        if (total > lim.max_ground_clauses)
            throw OracleRefusal("ground problem too large: more than " + std::to_string(lim.max_ground_clauses) +
                                " ground clauses");
    }
    std::set<GroundClause> seen;
    for (const auto& c : clauses) {
        for_each_grounding(c, sig.domain_size(), [&](const Clause& g) {
            ++gp.raw_instances;
            auto enc = encode_clause(sig, g);
            if (seen.insert(enc).second) gp.clauses.push_back(std::move(enc));
        });
    }
    return gp;
}

bool satisfies(const Assignment& a, const GroundClause& c) {
    return std::any_of(c.begin(), c.end(), [&](GroundLit l) { return a[atom_of(l)] == (l > 0); });
}

std::optional<Assignment> sat_enumerate(const GroundProblem& gp) {
    if (gp.atom_count > 24)
        throw OracleRefusal("enumeration refused: " + std::to_string(gp.atom_count) + " atoms (limit 24)");
    struct Masks {
        std::uint32_t pos = 0, neg = 0;
    };
    std::vector<Masks> ms;
    for (const auto& c : gp.clauses) {
        Masks m;
        for (GroundLit l : c) (l > 0 ? m.pos : m.neg) |= std::uint32_t{1} << atom_of(l);
        if ((m.pos | m.neg) == 0) return std::nullopt;
        ms.push_back(m);
    }
    const std::uint64_t end = std::uint64_t{1} << gp.atom_count;
    std::uint64_t a = 0;
    while (a < end) {
        auto bits = static_cast<std::uint32_t>(a);
        const Masks* bad = nullptr;
        for (const auto& m : ms)
            if (((bits & m.pos) | (~bits & m.neg)) == 0) {
                bad = &m;
                break;
            }
        if (!bad) {
            Assignment out(gp.atom_count);
            for (std::size_t i = 0; i < gp.atom_count; ++i) out[i] = (bits >> i) & 1u;
            return out;
        }
        // every assignment agreeing with `a` on the clause atoms falsifies it too
        std::uint64_t mask = bad->pos | bad->neg;
        std::uint64_t low = mask & (~mask + 1);
        a = ((a | (low - 1)) + 1) & ~(low - 1);
    }
    return std::nullopt;
}

namespace {

class Dpll {
public:
    explicit Dpll(const GroundProblem& gp) : gp_(gp), val_(gp.atom_count, -1) {}

    std::optional<Assignment> solve() {
        for (const auto& c : gp_.clauses)
            if (c.empty()) return std::nullopt;
        if (!search()) return std::nullopt;
        Assignment out(gp_.atom_count);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = val_[i] == 1;
        return out;
    }

private:
    int lit_value(GroundLit l) const {
        int v = val_[atom_of(l)];
        if (v < 0) return -1;
        return (v == 1) == (l > 0) ? 1 : 0;
    }
    void assign(GroundLit l) {
        val_[atom_of(l)] = l > 0 ? 1 : 0;
        trail_.push_back(atom_of(l));
    }
    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            val_[trail_.back()] = -1;
            trail_.pop_back();
        }
    }
    // false on conflict
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : gp_.clauses) {
                GroundLit unit = 0;
                int open = 0;
                bool sat = false;
                for (GroundLit l : c) {
                    int v = lit_value(l);
                    if (v == 1) {
                        sat = true;
                        break;
                    }
                    if (v < 0) {
                        ++open;
                        unit = l;
                    }
                }
                if (sat) continue;
                if (open == 0) return false;
                if (open == 1) {
                    assign(unit);
                    changed = true;
                }
            }
        }
        return true;
    }
    bool search() {
        if (!propagate()) return false;
        GroundLit pick = 0;
        for (const auto& c : gp_.clauses) {
            bool sat = false;
            GroundLit first_open = 0;
            for (GroundLit l : c) {
                int v = lit_value(l);
                if (v == 1) sat = true;
                if (v < 0 && first_open == 0) first_open = l;
            }
            if (!sat && first_open != 0) {
                pick = first_open;
                break;
            }
        }
        if (pick == 0) return true;
        for (GroundLit l : {pick, -pick}) {
            std::size_t mark = trail_.size();
            assign(l);
            if (search()) return true;
            undo(mark);
        }
        return false;
    }

    const GroundProblem& gp_;
    std::vector<int> val_;
    std::vector<std::size_t> trail_;
};

}  // namespace

std::optional<Assignment> sat_search(const GroundProblem& gp) { return Dpll(gp).solve(); }

OracleVerdict brute_sat(const GroundProblem& gp, const OracleLimits& lim) {
    std::optional<Assignment> a;
    if (gp.atom_count <= lim.enumerate_atoms && gp.atom_count <= 24) a = sat_enumerate(gp);
    else if (gp.atom_count <= lim.search_atoms) a = sat_search(gp);
    else
        throw OracleRefusal("oracle refused: " + std::to_string(gp.atom_count) + " atoms (limit " +
                            std::to_string(lim.search_atoms) + ")");
    if (!a) return {false, {}};
    return {true, std::move(*a)};
}

bool entails(const GroundProblem& premises, const GroundClause& c) {
    GroundProblem gp = premises;
    for (GroundLit l : c) gp.clauses.push_back({-l});
    return !sat_search(gp).has_value();
}

Assignment induced_assignment(const Signature& sig, std::span<const ConstrainedLiteral> model) {
    Assignment a(sig.atom_count(), false);
    for (const auto& cl : model) {
        if (!cl.lit.positive) continue;
        for (const auto& g : gnd(cl, sig.domain_size())) a[sig.atom_code(g.atom)] = true;
    }
    return a;
}

std::optional<Clause> verify_model(const Signature& sig, std::span<const ConstrainedLiteral> model,
                                   std::span<const Clause> clauses) {
    auto a = induced_assignment(sig, model);
    std::optional<Clause> failing;
    for (const auto& c : clauses) {
        for_each_grounding(c, sig.domain_size(), [&](const Clause& g) {
            if (failing) return;
            bool sat = std::any_of(g.lits.begin(), g.lits.end(),
                                   [&](const Literal& l) { return a[sig.atom_code(l.atom)] == l.positive; });
            if (!sat) failing = g;
        });
        if (failing) return failing;
    }
    return std::nullopt;
}

Redundancy check_nonredundant(const Clause& learned, std::span<const Clause> pool, const InducedOrdering& ord,
                              std::size_t universe_cap) {
    const auto& sig = ord.signature();
    if (sig.atom_count() > universe_cap) return Redundancy::Skipped;

    std::vector<Clause> ground_pool;
    std::set<std::vector<Literal>, decltype([](const auto& x, const auto& y) {
                 return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                                     [](const Literal& a, const Literal& b) { return (a <=> b) < 0; });
             })>
        pool_set;
    for (const auto& c : pool)
        for_each_grounding(c, sig.domain_size(), [&](const Clause& g) {
            auto canon = g.canonical();
            if (pool_set.insert(canon.lits).second) ground_pool.push_back(std::move(canon));
        });

    bool nonredundant = false;
    for_each_grounding(learned, sig.domain_size(), [&](const Clause& g) {
        if (nonredundant) return;
        auto canon = g.canonical();
        if (pool_set.count(canon.lits)) return;
        GroundProblem smaller;
        smaller.atom_count = sig.atom_count();
        for (const auto& d : ground_pool)
            if (ord.compare(d, canon) < 0) smaller.clauses.push_back(encode_clause(sig, d));
        if (!entails(smaller, encode_clause(sig, canon))) nonredundant = true;
    });
    return nonredundant ? Redundancy::NonRedundant : Redundancy::Redundant;
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
    bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }

private:
    std::mt19937_64 gen_;
};

const char* const kVarNames[] = {"x", "y", "z", "u", "v", "w"};

}  // namespace

Problem gen_random_instance(const GenParams& p) {
    Rng rng(p.seed);
    std::size_t npred = 1 + rng.below(p.max_predicates);
    std::vector<std::pair<std::string, std::size_t>> preds;
    // arity 0 and a one-constant domain make nearly every instance propositional
    auto between = [&](std::size_t lo, std::size_t hi) { return lo >= hi ? hi : lo + rng.below(hi - lo + 1); };
    for (std::size_t i = 0; i < npred; ++i)
        preds.emplace_back(std::string(1, static_cast<char>('P' + i)), between(1, p.max_arity));
    std::size_t ndom = between(2, p.max_domain);
    std::vector<std::string> dom;
    for (std::size_t i = 0; i < ndom; ++i) dom.emplace_back(1, static_cast<char>('a' + i));

    Problem out{Signature(preds, dom), {}, {}};
    std::size_t nclauses = 1 + rng.below(p.max_clauses);
    for (std::size_t ci = 0; ci < nclauses; ++ci) {
        Clause c;
        std::vector<VarId> local;
        std::size_t nlits = 1 + rng.below(p.max_literals);
        for (std::size_t li = 0; li < nlits; ++li) {
            auto& [name, ar] = preds[rng.below(preds.size())];
            Literal l{rng.chance(0.5), Atom{*out.sig.find_pred(name), {}}};
            for (std::size_t k = 0; k < ar; ++k) {
                if (rng.chance(p.constant_prob)) {
                    l.atom.args.push_back(Term::constant(static_cast<std::uint32_t>(rng.below(ndom))));
                } else if (!local.empty() && (local.size() == std::size(kVarNames) || rng.chance(p.share_prob))) {
                    l.atom.args.push_back(Term::variable(local[rng.below(local.size())]));
                } else {
                    local.push_back(out.vars.fresh(kVarNames[local.size()]));
                    l.atom.args.push_back(Term::variable(local.back()));
                }
            }
            c.lits.push_back(std::move(l));
        }
        out.clauses.push_back({"", std::move(c)});
    }
    return out;
}

Problem gen_benchmark(std::size_t n, std::size_t k) {
    if (n < 2 || k < 2) throw std::invalid_argument("benchmark needs n >= 2 and k >= 2");
    std::vector<std::string> dom;
    for (std::size_t i = 1; i <= n; ++i) dom.push_back("a" + std::to_string(i));
    Problem out{Signature({{"P", k}, {"Q", 2}}, dom), {}, {}};
    PredId P = *out.sig.find_pred("P");
    PredId Q = *out.sig.find_pred("Q");
    auto var = [&](const char* base) { return Term::variable(out.vars.fresh(base)); };
    auto cst = [](std::size_t i) { return Term::constant(static_cast<std::uint32_t>(i)); };
    auto add = [&](std::string label, std::vector<Literal> lits) { out.clauses.push_back({std::move(label), Clause{std::move(lits)}}); };

    {
        Term x = var("x");
        add("refl", {Literal{true, Atom{Q, {x, x}}}});
    }
    for (std::size_t i = 0; i + 1 < n; ++i) add("chain" + std::to_string(i + 1), {Literal{false, Atom{Q, {cst(i), cst(i + 1)}}}});
    for (std::size_t j = 0; j + 1 < k; ++j) {
        Args xs;
        for (std::size_t i = 0; i < k; ++i) xs.push_back(var(("x" + std::to_string(i + 1)).c_str()));
        xs[j + 1] = xs[j];
        add("distinct" + std::to_string(j + 1), {Literal{false, Atom{P, xs}}});
    }
    {
        Term x = var("x"), y = var("y"), z = var("z");
        add("trans", {Literal{false, Atom{Q, {x, z}}}, Literal{true, Atom{Q, {x, y}}}, Literal{true, Atom{Q, {y, z}}}});
    }
    {
        Args xs;
        for (std::size_t i = 0; i < k; ++i) xs.push_back(var(("x" + std::to_string(i + 1)).c_str()));
        std::vector<Literal> lits{Literal{true, Atom{P, xs}}};
        for (std::size_t i = 0; i + 1 < k; ++i) lits.push_back(Literal{true, Atom{Q, {xs[i], xs[i + 1]}}});
        add("cover", std::move(lits));
    }
    return out;
}

}  // namespace nrcl
