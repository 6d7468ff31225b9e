#pragma once

#include "nrcl/constrained.hpp"
#include "nrcl/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nrcl {

// One line of a decision script.  Decide text is parsed against the run's
// variable pool when it is consumed.
struct ScriptItem {
    enum class Kind { Decide, PreferClause };
    Kind kind = Kind::Decide;
    std::string literal_text;  // `L :: pi` for Decide
    std::size_t clause = 0;    // zero-based clause index for PreferClause
};

enum class ScoreCombiner { Sum, Max };

struct RunConfig {
    std::uint64_t max_steps = 1'000'000;
    std::uint64_t seed = 0;
    std::vector<ScriptItem> script;
    bool use_index = true;
    bool simplify = true;
    bool restrict_decisions = true;  // decided atoms must be instances of clause atoms
    bool audit = false;

    ScoreCombiner combiner = ScoreCombiner::Sum;
    double decay = 0.95;
    std::size_t normalize_every = 64;  // conflicts between score rescaling

    // ground universes above these sizes skip the corresponding audit
    std::size_t audit_redundancy_atoms = 24;
    std::size_t audit_entailment_atoms = 200;
    std::size_t audit_measure_atoms = 24;
    std::size_t audit_conflict_samples = 16;
};

enum class Verdict { Sat, Unsat, StepCap, Error };

std::string to_string(Verdict v);

struct TraceEvent {
    std::uint64_t step = 0;
    std::string rule;
    int level = 0;
    std::string payload;
};

struct RunStats {
    std::uint64_t steps = 0;
    std::uint64_t propagations = 0;
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t backjumps = 0;
    std::uint64_t resolutions = 0;
    std::uint64_t factorizations = 0;
    std::uint64_t skips = 0;
    std::uint64_t decision_splits = 0;
    std::uint64_t redundancy_checks = 0;
    std::uint64_t redundancy_skipped = 0;
};

struct RunResult {
    Verdict verdict = Verdict::Error;
    std::vector<std::string> notes;  // preprocessing log
    std::vector<TraceEvent> trace;
    std::vector<ConstrainedLiteral> model;  // final trail on Sat
    std::vector<Clause> learned;
    std::vector<std::string> violations;  // audit findings
    RunStats stats;
    std::string error;
    VarPool vars;  // names every variable in trace, model and learned clauses
};

RunResult solve(const Problem& problem, const RunConfig& cfg);

}  // namespace nrcl
