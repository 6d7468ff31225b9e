#pragma once

#include "nrcl/ordering.hpp"
#include "nrcl/oracle.hpp"
#include "nrcl/solver.hpp"
#include "nrcl/trail.hpp"

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrcl::detail {

struct ClauseRec {
    Clause clause;
    bool learned = false;
    bool active = true;
};

// Propagation candidate: literal `lit` of `clause` under (sigma; pi), with
// the rest of the clause false on the trail when it was derived.
struct Candidate {
    ClauseIdx clause = 0;
    std::size_t lit = 0;
    Substitution sigma;
    Constraint pi;
};

struct ConflictSet {
    Clause clause;
    Substitution sigma;
    Constraint pi;

    Clause instance() const { return sigma.apply(clause); }
};

class ScriptError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Variables renamed to 0, 1, ... in occurrence order; used as score keys.
Literal canonical_literal(const Literal& l);

class ScoreTable {
public:
    void bump(const Literal& l);
    void decay(double factor) { inc_ /= factor; }
    void normalize();
    // combination over scored literals of the given polarity unifiable with `a`
    double combined(const Atom& a, bool positive, ScoreCombiner how) const;
    double max_score() const;

private:
    std::vector<std::pair<Literal, double>> entries_;
    double inc_ = 1.0;
};

// Two-level clause filter.  A clause stays on the first level while two of
// its literals cannot be false, meaning no trail entry of opposite polarity
// unifies with them; such clauses cannot yield a candidate or a conflict.
class WatchIndex {
public:
    void rebuild(const std::vector<ClauseRec>& clauses, const Trail& t);
    void on_push(const std::vector<ClauseRec>& clauses, const Trail& t, std::size_t newest);
    bool hot(ClauseIdx c) const { return hot_[c] != 0; }

private:
    std::vector<std::array<int, 2>> watch_;
    std::vector<char> hot_;
};

bool may_be_false(const Literal& l, const Trail& t);

struct PoolRecord {
    int level;
    std::vector<ConstrainedLiteral> before;
};

class Engine {
public:
    Engine(const Problem& problem, const RunConfig& cfg);
    RunResult run();

private:
    // driver
    void preprocess();
    void seed_all();
    void seed_clause(ClauseIdx ci);
    void prop_step();
    void decide_step();
    void conflict_step();
    void finish(Verdict v);

    // derivations and consequences
    struct DeriveOut {
        std::vector<Candidate> candidates;
        std::optional<ConflictSet> conflict;
    };
    void derive(ClauseIdx ci, std::optional<std::size_t> newest, DeriveOut& out);
    void derive_rec(ClauseIdx ci, const std::vector<VarId>& c0vars, std::optional<std::size_t> newest,
                    const std::vector<char>& could_use, std::size_t pos, int remain, const Substitution& sigma,
                    const Constraint& pi, bool used, DeriveOut& out);
    bool add_consequences(std::size_t newest);
    std::size_t push_entry(TrailEntry e);
    void raise_conflict(ConflictSet cs, ClauseIdx ci, bool after_decision);

    // decisions
    void init_pool();
    std::optional<ConstrainedLiteral> pick_decision();
    std::optional<ConstrainedLiteral> scripted_decision(const std::string& text);
    std::optional<BlockWitness> blocked_by(const ConstrainedLiteral& cand, std::optional<std::size_t> limit = {},
                                           const Clause* only = nullptr) const;
    ConstrainedLiteral canonical_rename(const ConstrainedLiteral& cl);
    std::vector<DiffPiece> undefined_pieces(const ConstrainedLiteral& cl);

    // conflict resolution
    bool try_factorize();
    bool try_resolve();
    void skip();
    void backjump(int kase);
    int backjump_level(const Clause& c) const;

    // audits
    void audit_push(std::size_t idx, std::size_t clashes);
    void audit_conflict();
    void audit_resolution_rule(const std::string& rule);
    void audit_learn(const Clause& learned, int kase);
    void audit_success();
    bool ground_entailed(const Clause& ground);
    void violation(std::string what);

    // trace
    void emit(const std::string& rule, std::string payload);
    std::string clause_name(ClauseIdx i) const { return "C" + std::to_string(i + 1); }
    std::string render_entry(const TrailEntry& e) const;
    std::string render_triple(const ConflictSet& cs) const;
    std::string render_lit(const ConstrainedLiteral& cl) const;
    std::string render_clause(const Clause& c) const;

    const Problem& problem_;
    RunConfig cfg_;
    RunResult res_;
    VarPool& vars_;
    const Signature& sig_;

    std::vector<ClauseRec> clauses_;
    Trail trail_;
    int level_ = 0;
    std::deque<Candidate> pq_;
    std::optional<ConflictSet> conflict_;
    bool done_ = false;

    WatchIndex index_;
    ScoreTable scores_;
    std::vector<ConstrainedLiteral> pool_;
    std::vector<PoolRecord> pool_records_;
    std::size_t script_pos_ = 0;
    std::mt19937_64 rng_;

    // audit state
    bool expect_factorize_ = false;
    std::optional<InducedOrdering> conflict_order_;
    std::optional<std::pair<std::size_t, std::vector<Clause>>> measure_;
    std::optional<GroundProblem> ground_n_;
    bool ground_n_tried_ = false;
    std::map<GroundClause, bool> entailed_memo_;
};

}  // namespace nrcl::detail
