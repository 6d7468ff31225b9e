#include "nrcl/simplify.hpp"

namespace nrcl {

namespace {

bool match_lit(const Literal& g, const Literal& s, Substitution& sub) {
    if (g.positive != s.positive || g.atom.pred != s.atom.pred) return false;
    for (std::size_t i = 0; i < g.atom.args.size(); ++i) {
        Term t = g.atom.args[i];
        Term target = s.atom.args[i];
        if (t.is_const()) {
            if (t != target) return false;
        } else if (auto b = sub.lookup(t.var())) {
            if (*b != target) return false;
        } else if (Term::variable(t.var()) != target) {
            sub.bind(t.var(), target);
        }
    }
    return true;
}

bool embed(const Clause& c, std::size_t i, const Clause& d, std::vector<char>& used, Substitution& sub) {
    if (i == c.size()) return true;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (used[j]) continue;
        Substitution trial = sub;
        if (!match_lit(c.lits[i], d.lits[j], trial)) continue;
        used[j] = 1;
        if (embed(c, i + 1, d, used, trial)) {
            sub = std::move(trial);
            return true;
        }
        used[j] = 0;
    }
    return false;
}

}  // namespace

std::optional<Substitution> subsumes(const Clause& c, const Clause& d) {
    if (c.size() > d.size()) return std::nullopt;
    std::vector<char> used(d.size(), 0);
    Substitution sub;
    if (!embed(c, 0, d, used, sub)) return std::nullopt;
    return sub;
}

bool is_tautology(const Clause& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (c.lits[i].positive != c.lits[j].positive && c.lits[i].atom == c.lits[j].atom) return true;
    return false;
}

std::optional<Clause> subsumption_resolvent(const Clause& c, const Clause& d) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            Substitution sub;
            if (!match_lit(c.lits[i].negated(), d.lits[j], sub)) continue;
            Clause rest_c;
            for (std::size_t k = 0; k < c.size(); ++k)
                if (k != i) rest_c.lits.push_back(c.lits[k]);
            std::vector<char> used(d.size(), 0);
            used[j] = 1;
            if (!embed(rest_c, 0, d, used, sub)) continue;
            Clause out;
            for (std::size_t k = 0; k < d.size(); ++k)
                if (k != j) out.lits.push_back(d.lits[k]);
            return out;
        }
    }
    return std::nullopt;
}

std::vector<SimplifyStep> simplify(std::vector<Clause>& clauses, std::vector<bool>& active) {
    std::vector<SimplifyStep> log;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t d = 0; d < clauses.size(); ++d) {
            if (!active[d]) continue;
            if (is_tautology(clauses[d])) {
                log.push_back({SimplifyStep::Kind::Tautology, d, d, clauses[d], {}});
                active[d] = false;
                changed = true;
                continue;
            }
            for (std::size_t c = 0; c < clauses.size(); ++c) {
                if (c == d || !active[c]) continue;
                if (clauses[c].size() < clauses[d].size() && subsumes(clauses[c], clauses[d])) {
                    log.push_back({SimplifyStep::Kind::StrictSubsumption, d, c, clauses[d], {}});
                    active[d] = false;
                    changed = true;
                    break;
                }
                if (auto r = subsumption_resolvent(clauses[c], clauses[d])) {
                    log.push_back({SimplifyStep::Kind::SubsumptionResolution, d, c, clauses[d], *r});
                    clauses[d] = std::move(*r);
                    changed = true;
                    break;
                }
            }
        }
    }
    return log;
}

}  // namespace nrcl
