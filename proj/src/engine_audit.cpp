#include "engine.hpp"

#include "nrcl/render.hpp"

namespace nrcl::detail {

namespace {

// up to `limit` ground instances of the literals under the constraint
std::vector<Clause> sample_instances(const Signature& sig, const Clause& c, const Constraint& pi, std::size_t limit) {
    std::vector<Clause> out;
    GroundSearch gs(sig, c.lits, pi);
    gs.run(
        0, [](std::size_t, std::size_t, bool, int&) { return true; },
        [&](int&, std::span<const std::uint32_t> digits) {
            out.push_back(gs.grounding(digits).apply(c));
            return out.size() >= limit;
        });
    return out;
}

Clause without(const Clause& c, std::size_t i) {
    Clause out;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (k != i) out.lits.push_back(c.lits[k]);
    return out;
}

}  // namespace

void Engine::audit_push(std::size_t idx, std::size_t clashes) {
    const auto& e = trail_[idx];
    if (clashes) violation("entry " + render_entry(e) + " redefines " + std::to_string(clashes) + " atoms");
    if (is_empty(e.literal(), sig_.domain_size())) violation("entry " + render_entry(e) + " is empty");
    GroundView before{&trail_, idx, {}};
    if (e.is_decision()) {
        if (blocked_by(e.literal(), idx)) violation("decision " + render_entry(e) + " is blocked");
        return;
    }
    Clause inst = e.closure.sigma.apply(clauses_[e.reason].clause);
    Clause rest = without(inst, e.lit_index);
    if (clause_value(before, rest.lits, e.closure.pi) != ClauseValue::False)
        violation("reason of " + render_entry(e) + " is not false");
    if (e.level > 0 && has_instance_with_few_at_level(full_view(trail_), inst.lits, e.closure.pi, e.level, 2))
        violation("reason of " + render_entry(e) + " has an instance with fewer than two literals of its level");
}

void Engine::audit_conflict() {
    const auto& cs = *conflict_;
    Clause inst = cs.instance();
    if (!is_satisfiable(cs.pi, sig_.domain_size())) violation("conflict set is empty");
    if (clause_value(full_view(trail_), inst.lits, cs.pi) != ClauseValue::False) violation("conflict set is not false");
    if (level_ > 0 && has_instance_with_few_at_level(full_view(trail_), inst.lits, cs.pi, level_, 2))
        violation("conflict set has an instance with fewer than two top-level literals");
    for (const auto& g : sample_instances(sig_, inst, cs.pi, cfg_.audit_conflict_samples))
        if (!ground_entailed(g)) violation("conflict instance " + render_clause(g) + " is not entailed by the input");

    if (sig_.atom_count() <= cfg_.audit_redundancy_atoms) conflict_order_.emplace(trail_);
    if (conflict_order_ && sig_.atom_count() <= cfg_.audit_measure_atoms)
        measure_.emplace(trail_.size(), gnd(ConstrainedClause{cs.clause, cs.sigma, cs.pi}, sig_.domain_size()));
}

void Engine::audit_resolution_rule(const std::string& rule) {
    const auto& cs = *conflict_;
    Clause inst = cs.instance();
    if (!is_satisfiable(cs.pi, sig_.domain_size())) violation(rule + " produced an empty conflict set");
    if (clause_value(full_view(trail_), inst.lits, cs.pi) != ClauseValue::False)
        violation(rule + " produced a conflict set that is not false");
    if (level_ > 0 && has_instance_with_few_at_level(full_view(trail_), inst.lits, cs.pi, level_, 1))
        violation(rule + " left an instance without a top-level literal");
    if (measure_) {
        std::pair<std::size_t, std::vector<Clause>> now{trail_.size(),
                                                        gnd(ConstrainedClause{cs.clause, cs.sigma, cs.pi}, sig_.domain_size())};
        const auto& ord = *conflict_order_;
        auto cmp = now.first <=> measure_->first;
        if (cmp == 0) cmp = multiset_compare(now.second, measure_->second, [&](const Clause& a, const Clause& b) { return ord.compare(a, b); });
        if (cmp >= 0) violation(rule + " did not decrease the conflict resolution measure");
        measure_ = std::move(now);
    }
}

void Engine::audit_learn(const Clause& learned, int kase) {
    if (kase == 3) {
        const auto& d = trail_.back();
        if (!d.is_decision() || !blocked_by(d.literal(), trail_.size() - 1, &learned))
            violation("clause learned by case 3 does not block the removed decision");
    }
    if (conflict_order_) {
        std::vector<Clause> pool;
        for (const auto& rec : clauses_)
            if (rec.active) pool.push_back(rec.clause);
        ++res_.stats.redundancy_checks;
        auto r = check_nonredundant(learned, pool, *conflict_order_, cfg_.audit_redundancy_atoms);
        if (r == Redundancy::Redundant) violation("learned clause " + render_clause(learned) + " is redundant");
        if (r == Redundancy::Skipped) ++res_.stats.redundancy_skipped;
    } else {
        ++res_.stats.redundancy_skipped;
    }
    for (const auto& g : sample_instances(sig_, learned, Constraint::top(), 256))
        if (!ground_entailed(g)) violation("learned instance " + render_clause(g) + " is not entailed by the input");
}

void Engine::audit_success() {
    auto input = problem_.clause_list();
    if (auto bad = verify_model(sig_, res_.model, input)) violation("model falsifies " + render_clause(*bad));
}

bool Engine::ground_entailed(const Clause& ground) {
    if (!ground_n_tried_) {
        ground_n_tried_ = true;
        if (sig_.atom_count() <= cfg_.audit_entailment_atoms) {
            auto input = problem_.clause_list();
            try {
                ground_n_ = ground_problem(sig_, input, OracleLimits{24, 60, 200'000});
            } catch (const OracleRefusal&) {
            }
        }
    }
    if (!ground_n_) return true;
    auto enc = encode_clause(sig_, ground);
    if (auto it = entailed_memo_.find(enc); it != entailed_memo_.end()) return it->second;
    bool ok = entails(*ground_n_, enc);
    entailed_memo_.emplace(std::move(enc), ok);
    return ok;
}

}  // namespace nrcl::detail
