#include "engine.hpp"

#include <algorithm>

namespace nrcl::detail {

namespace {

Clause without(const Clause& c, std::size_t i) {
    Clause out;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (k != i) out.lits.push_back(c.lits[k]);
    return out;
}

Clause concat(Clause a, const Clause& b) {
    a.lits.insert(a.lits.end(), b.lits.begin(), b.lits.end());
    return a;
}

}  // namespace

void Engine::conflict_step() {
    const ConflictSet& cs = *conflict_;
    bool expect_factorize = expect_factorize_;
    expect_factorize_ = false;
    auto check_expected = [&](const char* rule) {
        if (cfg_.audit && expect_factorize && std::string(rule) != "Factorize")
            violation(std::string("conflict right after a decision was followed by ") + rule);
    };

    if (cs.clause.empty()) {
        check_expected("Backjump");
        backjump(1);
        return;
    }
    Clause inst = cs.instance();
    if (level_ > 0 && is_assertive(full_view(trail_), inst.lits, cs.pi, level_)) {
        check_expected("Backjump");
        backjump(2);
        return;
    }
    if (try_factorize()) return;
    if (trail_.back().is_decision()) {
        check_expected("Backjump");
        backjump(3);
        return;
    }
    check_expected("Resolve/Skip");
    if (try_resolve()) return;
    skip();
}

bool Engine::try_factorize() {
    const ConflictSet& cs = *conflict_;
    const TrailEntry& e = trail_.back();
    const Clause& c = cs.clause;
    auto copy = rename_apart(e.literal(), vars_);

    std::optional<ConflictSet> first, preferred;
    for (std::size_t i = 0; i < c.size() && !preferred; ++i) {
        const Literal& l1 = c.lits[i];
        if (l1.positive == e.inst.positive || l1.atom.pred != e.inst.atom.pred) continue;
        for (std::size_t j = 0; j < c.size(); ++j) {
            const Literal& l2 = c.lits[j];
            if (j == i || l2.positive != l1.positive || l2.atom.pred != l1.atom.pred) continue;
            // the dropped literal goes first so its variables are the ones bound
            std::vector<Atom> atoms{copy.lit.atom, cs.sigma.apply(l2.atom), cs.sigma.apply(l1.atom)};
            auto eta = mgu(atoms);
            if (!eta) continue;
            Constraint check = normalize(cs.pi.apply(*eta).conjoin(copy.pi.apply(*eta)));
            if (check.is_bot() || !is_satisfiable(check, sig_.domain_size())) continue;
            auto eta0 = unify(l2.atom, l1.atom);
            if (!eta0) continue;
            Clause kept = without(c, j);
            Clause r = eta0->apply(kept);
            Clause kept_inst = cs.sigma.apply(kept);
            Clause merged = eta->apply(kept_inst);
            auto sstar = match_onto(r, merged);
            if (!sstar) continue;
            auto rv = vars_of(r);
            ConflictSet next{r, sstar->restrict(rv), normalize(cs.pi.apply(*eta))};
            // prefer merging without instantiating the surviving literals
            if (merged == kept_inst) {
                preferred = std::move(next);
                break;
            }
            if (!first) first = std::move(next);
        }
    }
    auto& pick = preferred ? preferred : first;
    if (!pick) return false;
    conflict_ = std::move(*pick);
    ++res_.stats.factorizations;
    emit("Factorize", render_triple(*conflict_));
    if (cfg_.audit) audit_resolution_rule("Factorize");
    return true;
}

bool Engine::try_resolve() {
    const ConflictSet& cs = *conflict_;
    const TrailEntry& e = trail_.back();
    if (e.is_decision()) return false;
    const Clause& reason = clauses_[e.reason].clause;
    auto rvars = vars_of(reason);
    Substitution rho = fresh_renaming(rvars, vars_);

    // reason instance expressed over the renamed clause variables
    Substitution s2, tau;
    for (VarId v : rvars) {
        Term t = e.closure.sigma.apply(Term::variable(v));
        VarId rv = rho.apply(Term::variable(v)).var();
        if (t.is_var()) {
            if (auto w = tau.lookup(t.var())) s2.bind(rv, *w);
            else tau.bind(t.var(), Term::variable(rv));
        } else {
            s2.bind(rv, t);
        }
    }
    Constraint pi2 = rename_rhs_fresh(e.closure.pi.apply(tau), vars_);
    Clause rc = rho.apply(reason);
    const Literal& lr = rc.lits[e.lit_index];
    Literal lr_inst = s2.apply(lr);

    const Clause& c = cs.clause;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Literal& l = c.lits[i];
        if (l.atom.pred != lr.atom.pred || l.positive == lr.positive) continue;
        auto eta = unify(lr_inst.atom, cs.sigma.apply(l.atom));
        if (!eta) continue;
        Constraint pi = normalize(cs.pi.apply(*eta).conjoin(pi2.apply(*eta)));
        if (pi.is_bot() || !is_satisfiable(pi, sig_.domain_size())) continue;
        auto eta0 = unify(lr.atom, l.atom);
        if (!eta0) continue;
        Clause rest_c = without(c, i);
        Clause rest_r = without(rc, e.lit_index);
        Clause r = eta0->apply(concat(rest_c, rest_r));
        Clause added = eta->apply(s2.apply(rest_r));
        Clause target = concat(eta->apply(cs.sigma.apply(rest_c)), added);
        auto sstar = match_onto(r, target);
        if (!sstar) continue;
        auto rv = vars_of(r);
        conflict_ = ConflictSet{r, sstar->restrict(rv), std::move(pi)};
        for (const auto& lit : added.lits) scores_.bump(lit);
        ++res_.stats.resolutions;
        emit("Resolve", clause_name(e.reason) + " " + render_triple(*conflict_));
        if (cfg_.audit) audit_resolution_rule("Resolve");
        return true;
    }
    return false;
}

void Engine::skip() {
    std::string payload = render_entry(trail_.back());
    trail_.pop();
    ++res_.stats.skips;
    emit("Skip", std::move(payload));
    if (cfg_.audit) audit_resolution_rule("Skip");
}

int Engine::backjump_level(const Clause& c) const {
    for (int j = 0; j < level_; ++j) {
        auto v = level_view(trail_, j);
        if (has_false_instance(v, c.lits, Constraint::top())) return j - 1;
        if (propagates(v, c.lits, Constraint::top())) return j;
    }
    return level_ - 1;
}

void Engine::backjump(int kase) {
    Clause learned = conflict_->clause;
    if (cfg_.audit) audit_learn(learned, kase);

    int target = kase == 1 ? 0 : backjump_level(learned);
    ClauseIdx li = clauses_.size();
    clauses_.push_back({learned, true, true});
    res_.learned.push_back(learned);

    bool reseed_all = target < 0;
    level_ = std::max(target, 0);
    trail_.truncate(trail_.prefix_for_level(level_));
    if (reseed_all) {
        // the clause is false already on level 0: drop the level-0 suffix that falsifies it
        while (!trail_.empty() && has_false_instance(full_view(trail_), learned.lits, Constraint::top())) trail_.pop();
    }
    while (!pool_records_.empty() && pool_records_.back().level > level_) {
        pool_ = std::move(pool_records_.back().before);
        pool_records_.pop_back();
    }
    pq_.clear();
    conflict_.reset();
    conflict_order_.reset();
    measure_.reset();
    index_.rebuild(clauses_, trail_);
    ++res_.stats.backjumps;

    scores_.decay(cfg_.decay);
    if (cfg_.normalize_every > 0 && res_.stats.backjumps % cfg_.normalize_every == 0) scores_.normalize();

    emit("Backjump", "case " + std::to_string(kase) + " learn " + clause_name(li) + " " + render_clause(learned));
    if (kase == 1) {
        emit("Failure", "false");
        finish(Verdict::Unsat);
        return;
    }
    if (reseed_all) seed_all();
    else seed_clause(li);
}

}  // namespace nrcl::detail
