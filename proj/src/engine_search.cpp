#include "engine.hpp"

#include "nrcl/io.hpp"
#include "nrcl/render.hpp"
#include "nrcl/simplify.hpp"

#include <algorithm>
#include <cmath>

namespace nrcl {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "Sat";
        case Verdict::Unsat: return "Unsat";
        case Verdict::StepCap: return "StepCap";
        case Verdict::Error: return "Error";
    }
    return "Error";
}

RunResult solve(const Problem& problem, const RunConfig& cfg) { return detail::Engine(problem, cfg).run(); }

namespace detail {

Literal canonical_literal(const Literal& l) {
    auto vs = vars_of(l);
    Substitution s;
    for (std::size_t i = 0; i < vs.size(); ++i) s.bind(vs[i], Term::variable(VarId{static_cast<std::uint32_t>(i)}));
    return s.apply(l);
}

void ScoreTable::bump(const Literal& l) {
    Literal key = canonical_literal(l);
    for (auto& [k, s] : entries_)
        if (k == key) {
            s += inc_;
            return;
        }
    entries_.emplace_back(std::move(key), inc_);
}

double ScoreTable::max_score() const {
    double m = 0;
    for (const auto& e : entries_) m = std::max(m, e.second);
    return m;
}

void ScoreTable::normalize() {
    double m = max_score();
    if (m <= 0) return;
    for (auto& e : entries_) e.second /= m;
    inc_ /= m;
}

double ScoreTable::combined(const Atom& a, bool positive, ScoreCombiner how) const {
    double out = 0;
    for (const auto& [k, s] : entries_) {
        if (k.positive != positive || !unifiable_apart(a, k.atom)) continue;
        out = how == ScoreCombiner::Sum ? out + s : std::max(out, s);
    }
    return out;
}

bool may_be_false(const Literal& l, const Trail& t) {
    for (std::size_t i : t.entries_for(l.atom.pred)) {
        const auto& e = t[i];
        if (e.inst.positive != l.positive && unifiable_apart(e.inst.atom, l.atom)) return true;
    }
    return false;
}

void WatchIndex::rebuild(const std::vector<ClauseRec>& clauses, const Trail& t) {
    watch_.assign(clauses.size(), {-1, -1});
    hot_.assign(clauses.size(), 0);
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (!clauses[c].active) continue;
        int found = 0;
        const auto& lits = clauses[c].clause.lits;
        for (std::size_t i = 0; i < lits.size() && found < 2; ++i)
            if (!may_be_false(lits[i], t)) watch_[c][found++] = static_cast<int>(i);
        if (found < 2) hot_[c] = 1;
    }
}

void WatchIndex::on_push(const std::vector<ClauseRec>& clauses, const Trail& t, std::size_t newest) {
    const auto& e = t[newest];
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (!clauses[c].active || hot_[c]) continue;
        const auto& lits = clauses[c].clause.lits;
        for (int slot = 0; slot < 2 && !hot_[c]; ++slot) {
            const auto& w = lits[static_cast<std::size_t>(watch_[c][slot])];
            if (w.atom.pred != e.inst.atom.pred || w.positive == e.inst.positive || !unifiable_apart(e.inst.atom, w.atom))
                continue;
            int other = watch_[c][1 - slot];
            int repl = -1;
            for (std::size_t i = 0; i < lits.size(); ++i)
                if (static_cast<int>(i) != other && static_cast<int>(i) != watch_[c][slot] && !may_be_false(lits[i], t)) {
                    repl = static_cast<int>(i);
                    break;
                }
            if (repl < 0) hot_[c] = 1;
            else watch_[c][slot] = repl;
        }
    }
}

Engine::Engine(const Problem& problem, const RunConfig& cfg)
    : problem_(problem), cfg_(cfg), res_{}, vars_(res_.vars), sig_(problem.sig), trail_(problem.sig), rng_(cfg.seed) {
    res_.vars = problem.vars;
    for (const auto& nc : problem.clauses) clauses_.push_back({nc.clause, false, true});
}

// ---------------------------------------------------------------- trace

std::string Engine::render_lit(const ConstrainedLiteral& cl) const { return render(cl, sig_, vars_); }

std::string Engine::render_clause(const Clause& c) const {
    Namer n(sig_, vars_);
    return render(c, n);
}

std::string Engine::render_entry(const TrailEntry& e) const {
    std::string tag = e.is_decision() ? "[lvl " + std::to_string(e.decision_level) + " DECIDE] "
                                      : "[reason " + clause_name(e.reason) + "] ";
    return tag + render_lit(e.literal());
}

std::string Engine::render_triple(const ConflictSet& cs) const {
    Namer n(sig_, vars_);
    return render_clause_triple(cs.clause, cs.sigma, cs.pi, n);
}

void Engine::emit(const std::string& rule, std::string payload) {
    ++res_.stats.steps;
    res_.trace.push_back({res_.stats.steps, rule, level_, std::move(payload)});
}

void Engine::violation(std::string what) {
    res_.violations.push_back("step " + std::to_string(res_.stats.steps) + ": " + std::move(what));
}

// ---------------------------------------------------------------- driver

void Engine::preprocess() {
    if (!cfg_.simplify) return;
    std::vector<Clause> cs;
    std::vector<bool> active;
    for (const auto& r : clauses_) {
        cs.push_back(r.clause);
        active.push_back(r.active);
    }
    for (const auto& st : simplify(cs, active)) {
        std::string line;
        switch (st.kind) {
            case SimplifyStep::Kind::Tautology:
                line = "simplify: tautology " + clause_name(st.target) + " deleted";
                break;
            case SimplifyStep::Kind::StrictSubsumption:
                line = "simplify: " + clause_name(st.target) + " strictly subsumed by " + clause_name(st.by) + ", deleted";
                break;
            case SimplifyStep::Kind::SubsumptionResolution:
                line = "simplify: subsumption resolution with " + clause_name(st.by) + " shortens " +
                       clause_name(st.target) + " to " + render_clause(st.after);
                break;
        }
        res_.notes.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
        clauses_[i].clause = cs[i];
        clauses_[i].active = active[i];
    }
}

void Engine::finish(Verdict v) {
    res_.verdict = v;
    done_ = true;
}

RunResult Engine::run() {
    try {
        preprocess();
        for (const auto& r : clauses_)
            if (r.active && r.clause.empty()) {
                emit("Failure", "false");
                finish(Verdict::Unsat);
                return std::move(res_);
            }
        index_.rebuild(clauses_, trail_);
        init_pool();
        seed_all();
        while (!done_) {
            if (res_.stats.steps >= cfg_.max_steps) {
                finish(Verdict::StepCap);
                break;
            }
            if (conflict_) conflict_step();
            else if (!pq_.empty()) prop_step();
            else decide_step();
        }
    } catch (const ScriptError& e) {
        res_.error = e.what();
        res_.verdict = Verdict::Error;
    } catch (const std::exception& e) {
        res_.error = e.what();
        res_.verdict = Verdict::Error;
    }
    return std::move(res_);
}

// ---------------------------------------------------------------- derivations

void Engine::derive(ClauseIdx ci, std::optional<std::size_t> newest, DeriveOut& out) {
    const Clause& c0 = clauses_[ci].clause;
    auto c0vars = vars_of(c0);
    std::vector<char> could_use(c0.size() + 1, 0);
    if (newest) {
        const auto& e = trail_[*newest];
        for (std::size_t i = c0.size(); i-- > 0;) {
            const auto& l = c0.lits[i];
            bool hit = l.atom.pred == e.inst.atom.pred && l.positive != e.inst.positive &&
                       unifiable_apart(e.inst.atom, l.atom);
            could_use[i] = could_use[i + 1] || hit;
        }
    }
    derive_rec(ci, c0vars, newest, could_use, 0, -1, Substitution{}, Constraint::top(), false, out);
}

void Engine::derive_rec(ClauseIdx ci, const std::vector<VarId>& c0vars, std::optional<std::size_t> newest,
                        const std::vector<char>& could_use, std::size_t pos, int remain, const Substitution& sigma,
                        const Constraint& pi, bool used, DeriveOut& out) {
    if (out.conflict) return;
    const Clause& c0 = clauses_[ci].clause;
    if (newest && !used && !could_use[pos]) return;
    if (pos == c0.size()) {
        if (remain < 0) {
            if (is_satisfiable(pi, sig_.domain_size())) out.conflict = ConflictSet{c0, sigma, pi};
            return;
        }
        Closure cl{c0.lits[static_cast<std::size_t>(remain)], sigma, pi};
        for (auto& piece : elim_free_vars(cl, sig_.domain_size()))
            out.candidates.push_back({ci, static_cast<std::size_t>(remain), std::move(piece.sigma), std::move(piece.pi)});
        return;
    }
    const Literal& l = c0.lits[pos];
    Literal ls = sigma.apply(l);
    for (std::size_t ei : trail_.entries_for(l.atom.pred)) {
        const auto& e = trail_[ei];
        if (e.inst.positive == l.positive || !unifiable_apart(e.inst.atom, ls.atom)) continue;
        auto copy = rename_apart(e.literal(), vars_);
        auto theta = unify(copy.lit.atom, ls.atom);
        if (!theta) continue;
        Substitution s2 = compose(sigma, *theta).restrict(c0vars);
        Constraint p2 = normalize(pi.apply(*theta).conjoin(copy.pi.apply(*theta)));
        if (p2.is_bot()) continue;
        derive_rec(ci, c0vars, newest, could_use, pos + 1, remain, s2, p2, used || (newest && ei == *newest), out);
        if (out.conflict) return;
    }
    if (remain < 0) derive_rec(ci, c0vars, newest, could_use, pos + 1, static_cast<int>(pos), sigma, pi, used, out);
}

void Engine::raise_conflict(ConflictSet cs, ClauseIdx ci, bool after_decision) {
    conflict_ = std::move(cs);
    ++res_.stats.conflicts;
    for (const auto& l : conflict_->instance().lits) scores_.bump(l);
    emit("Conflict", clause_name(ci) + " " + render_triple(*conflict_));
    expect_factorize_ = after_decision;
    if (cfg_.audit) audit_conflict();
}

bool Engine::add_consequences(std::size_t newest) {
    const auto& e = trail_[newest];
    bool after_decision = e.is_decision();
    // a queued candidate clashing with the new entry
    for (const auto& cand : pq_) {
        const Clause& c = clauses_[cand.clause].clause;
        Literal inst = cand.sigma.apply(c.lits[cand.lit]);
        if (inst.atom.pred != e.inst.atom.pred || inst.positive == e.inst.positive) continue;
        auto copy = rename_apart(e.literal(), vars_);
        auto delta = unify(copy.lit.atom, inst.atom);
        if (!delta) continue;
        Constraint pi = normalize(cand.pi.apply(*delta).conjoin(copy.pi.apply(*delta)));
        if (pi.is_bot() || !is_satisfiable(pi, sig_.domain_size())) continue;
        auto cv = vars_of(c);
        raise_conflict({c, compose(cand.sigma, *delta).restrict(cv), std::move(pi)}, cand.clause, after_decision);
        return false;
    }
    if (cfg_.use_index) index_.on_push(clauses_, trail_, newest);
    std::vector<Candidate> collected;
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
        const auto& rec = clauses_[ci];
        if (!rec.active) continue;
        if (cfg_.use_index && !index_.hot(ci)) continue;
        bool affected = std::any_of(rec.clause.lits.begin(), rec.clause.lits.end(), [&](const Literal& l) {
            return l.atom.pred == e.inst.atom.pred && l.positive != e.inst.positive && unifiable_apart(e.inst.atom, l.atom);
        });
        if (!affected) continue;
        DeriveOut out;
        derive(ci, newest, out);
        if (out.conflict) {
            raise_conflict(std::move(*out.conflict), ci, after_decision);
            return false;
        }
        for (auto& c : out.candidates) collected.push_back(std::move(c));
    }
    for (auto& c : collected) pq_.push_back(std::move(c));
    return true;
}

void Engine::seed_clause(ClauseIdx ci) {
    DeriveOut out;
    derive(ci, std::nullopt, out);
    if (out.conflict) {
        raise_conflict(std::move(*out.conflict), ci, false);
        return;
    }
    for (auto& c : out.candidates) pq_.push_back(std::move(c));
}

void Engine::seed_all() {
    std::vector<Candidate> collected;
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
        if (!clauses_[ci].active) continue;
        DeriveOut out;
        derive(ci, std::nullopt, out);
        if (out.conflict) {
            raise_conflict(std::move(*out.conflict), ci, false);
            return;
        }
        for (auto& c : out.candidates) collected.push_back(std::move(c));
    }
    for (auto& c : collected) pq_.push_back(std::move(c));
}

std::size_t Engine::push_entry(TrailEntry e) {
    auto clashes = trail_.push(std::move(e));
    std::size_t idx = trail_.size() - 1;
    if (cfg_.audit) audit_push(idx, clashes.size());
    return idx;
}

std::vector<DiffPiece> Engine::undefined_pieces(const ConstrainedLiteral& cl) {
    std::vector<DiffPiece> pieces{DiffPiece{{}, cl}};
    for (std::size_t ei : trail_.entries_for(cl.lit.atom.pred)) {
        const auto& e = trail_[ei];
        std::vector<DiffPiece> next;
        for (auto& p : pieces) {
            if (!unifiable_apart(p.cl.lit.atom, e.inst.atom)) {
                next.push_back(std::move(p));
                continue;
            }
            for (auto& q : difference(p.cl, e.literal(), vars_))
                next.push_back({compose(p.inst, q.inst), std::move(q.cl)});
        }
        pieces = std::move(next);
        if (pieces.empty()) break;
    }
    std::erase_if(pieces, [&](const DiffPiece& p) { return is_empty(p.cl, sig_.domain_size()); });
    return pieces;
}

void Engine::prop_step() {
    std::size_t pick = 0;
    if (script_pos_ < cfg_.script.size() && cfg_.script[script_pos_].kind == ScriptItem::Kind::PreferClause) {
        std::size_t want = cfg_.script[script_pos_++].clause;
        auto it = std::find_if(pq_.begin(), pq_.end(), [&](const Candidate& c) { return c.clause == want; });
        if (it == pq_.end()) throw ScriptError("script: no queued propagation from " + clause_name(want));
        pick = static_cast<std::size_t>(it - pq_.begin());
    }
    Candidate cand = std::move(pq_[pick]);
    pq_.erase(pq_.begin() + static_cast<std::ptrdiff_t>(pick));

    const Clause& c = clauses_[cand.clause].clause;
    const Literal& l = c.lits[cand.lit];
    auto cvars = vars_of(c);
    for (auto& piece : undefined_pieces({cand.sigma.apply(l), cand.pi})) {
        Closure cl{l, compose(cand.sigma, piece.inst).restrict(cvars), piece.cl.pi};
        for (auto& part : elim_free_vars(cl, sig_.domain_size())) {
            TrailEntry e{part, part.instance(), 0, cand.clause, cand.lit, level_};
            std::size_t idx = push_entry(std::move(e));
            ++res_.stats.propagations;
            emit("Propagate", render_entry(trail_[idx]));
            if (!add_consequences(idx)) return;
        }
    }
}

void Engine::decide_step() {
    std::optional<ConstrainedLiteral> d;
    if (script_pos_ < cfg_.script.size()) {
        const auto& item = cfg_.script[script_pos_];
        if (item.kind != ScriptItem::Kind::Decide)
            throw ScriptError("script: propagation hint for " + clause_name(item.clause) + " with an empty queue");
        ++script_pos_;
        d = scripted_decision(item.literal_text);
    } else {
        d = pick_decision();
    }
    if (!d) {
        res_.model.clear();
        for (const auto& e : trail_.entries()) res_.model.push_back(e.literal());
        level_ = -1;
        emit("Success", "model of " + std::to_string(res_.model.size()) + " literals");
        if (cfg_.audit) audit_success();
        finish(Verdict::Sat);
        return;
    }
    ++level_;
    Closure cl{d->lit, {}, d->pi};
    TrailEntry e{cl, d->lit, level_, 0, 0, level_};
    std::size_t idx = push_entry(std::move(e));
    ++res_.stats.decisions;
    emit("Decide", render_entry(trail_[idx]));
    add_consequences(idx);
}

}  // namespace detail
}  // namespace nrcl
