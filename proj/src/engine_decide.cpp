#include "engine.hpp"

#include "nrcl/io.hpp"

#include <algorithm>
#include <numeric>

namespace nrcl::detail {

ConstrainedLiteral Engine::canonical_rename(const ConstrainedLiteral& cl) {
    auto vs = vars_of(cl.lit);
    for (VarId v : cl.pi.lvars())
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    auto r = fresh_renaming(vs, vars_);
    return {r.apply(cl.lit), rename_rhs_fresh(cl.pi.apply(r), vars_)};
}

void Engine::init_pool() {
    std::vector<Literal> seen;
    for (const auto& rec : clauses_) {
        if (!rec.active || rec.learned) continue;
        for (const auto& l : rec.clause.lits) {
            Literal key = canonical_literal(Literal{true, l.atom});
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            seen.push_back(key);
            pool_.push_back({rename_fresh(Literal{true, l.atom}, vars_), Constraint::top()});
        }
    }
    for (std::size_t i = pool_.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng_() % i);
        std::swap(pool_[i - 1], pool_[j]);
    }
}

std::optional<BlockWitness> Engine::blocked_by(const ConstrainedLiteral& cand, std::optional<std::size_t> limit,
                                               const Clause* only) const {
    std::vector<std::uint8_t> cover(sig_.atom_count(), 0);
    for (std::size_t code : trail_.covered_codes(cand)) cover[code] = 1;
    GroundView v{&trail_, limit.value_or(trail_.size()), Overlay{cover, cand.lit.positive}};
    if (only) return blocking_instance(v, *only);
    for (const auto& rec : clauses_) {
        if (!rec.active) continue;
        if (auto w = blocking_instance(v, rec.clause)) return w;
    }
    return std::nullopt;
}

std::optional<ConstrainedLiteral> Engine::pick_decision() {
    while (true) {
        std::vector<double> key(pool_.size()), pos(pool_.size()), neg(pool_.size());
        for (std::size_t i = 0; i < pool_.size(); ++i) {
            pos[i] = scores_.combined(pool_[i].lit.atom, true, cfg_.combiner);
            neg[i] = scores_.combined(pool_[i].lit.atom, false, cfg_.combiner);
            key[i] = cfg_.combiner == ScoreCombiner::Sum ? pos[i] + neg[i] : std::max(pos[i], neg[i]);
        }
        std::vector<std::size_t> order(pool_.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });

        bool split = false;
        for (std::size_t i : order) {
            auto pieces = undefined_pieces(pool_[i]);
            if (pieces.empty()) continue;
            const auto& piece = pieces.front().cl;
            bool positive = !(neg[i] > pos[i]);
            auto cand = canonical_rename({Literal{positive, piece.lit.atom}, piece.pi});
            auto w = blocked_by(cand);
            if (!w) return cand;

            // separate the two falsified atoms into different pool items
            Atom a1 = sig_.atom_from_code(w->atom1);
            Atom a2 = sig_.atom_from_code(w->atom2);
            std::size_t p = 0;
            while (a1.args[p] == a2.args[p]) ++p;
            const ConstrainedLiteral item = pool_[i];
            Term t = item.lit.atom.args[p];
            if (!t.is_var()) throw std::logic_error("blocking witness outside the pool item");
            auto bind = Substitution::from_bindings({{t.var(), a1.args[p]}});
            ConstrainedLiteral fixed{bind.apply(item.lit), normalize(item.pi.apply(bind))};
            Constraint rest_pi = item.pi;
            rest_pi.add(Disequation{{t}, {a1.args[p]}});
            ConstrainedLiteral rest{item.lit, normalize(rest_pi)};

            pool_records_.push_back({level_ + 1, pool_});
            std::vector<ConstrainedLiteral> repl;
            if (!fixed.pi.is_bot()) repl.push_back(std::move(fixed));
            if (!rest.pi.is_bot()) repl.push_back(std::move(rest));
            pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(i));
            pool_.insert(pool_.begin() + static_cast<std::ptrdiff_t>(i), repl.begin(), repl.end());
            ++res_.stats.decision_splits;
            split = true;
            break;
        }
        if (!split) return std::nullopt;
    }
}

std::optional<ConstrainedLiteral> Engine::scripted_decision(const std::string& text) {
    ConstrainedLiteral cl;
    try {
        cl = parse_constrained_literal(text, sig_, vars_);
    } catch (const std::exception& e) {
        throw ScriptError("script: cannot parse decision `" + text + "`: " + e.what());
    }
    cl = canonical_rename(cl);
    cl.pi = normalize(cl.pi);
    auto fail = [&](const std::string& why) { throw ScriptError("script: decision `" + text + "` " + why); };
    if (cl.pi.is_bot() || is_empty(cl, sig_.domain_size())) fail("is empty");
    for (std::size_t code : trail_.covered_codes(cl))
        if (trail_.definer(code) >= 0) fail("is not undefined");
    if (cfg_.restrict_decisions) {
        bool generalized = false;
        for (const auto& rec : clauses_) {
            if (!rec.active) continue;
            for (const auto& l : rec.clause.lits)
                if (match_onto(l.atom, cl.lit.atom)) generalized = true;
        }
        if (!generalized) fail("is not an instance of a clause atom");
    }
    if (blocked_by(cl)) fail("is blocked");
    return cl;
}

}  // namespace nrcl::detail
