#pragma once

#include "nrcl/constrained.hpp"
#include "nrcl/ordering.hpp"
#include "nrcl/problem.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace nrcl {

// Literals are encoded as +(code+1) / -(code+1) over the dense atom codes.
using GroundLit = std::int32_t;
using GroundClause = std::vector<GroundLit>;

inline GroundLit encode(std::size_t code, bool positive) {
    auto v = static_cast<GroundLit>(code + 1);
    return positive ? v : -v;
}
inline std::size_t atom_of(GroundLit l) { return static_cast<std::size_t>(l < 0 ? -l : l) - 1; }

struct GroundProblem {
    std::size_t atom_count = 0;
    std::vector<GroundClause> clauses;  // each sorted and duplicate free; set of clauses
    std::size_t raw_instances = 0;      // before deduplication
};

class OracleRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleLimits {
    std::size_t enumerate_atoms = 24;
    std::size_t search_atoms = 60;
    std::size_t max_ground_clauses = 2'000'000;
};

GroundClause encode_clause(const Signature& sig, const Clause& ground);

// exhaustive instantiation, throws OracleRefusal when the instance count exceeds the limit
GroundProblem ground_problem(const Signature& sig, std::span<const Clause> clauses, const OracleLimits& lim = {});

// assignment indexed by atom code
using Assignment = std::vector<bool>;

// full truth-table enumeration; refuses above 24 atoms
std::optional<Assignment> sat_enumerate(const GroundProblem& gp);
// backtracking with unit propagation, no size bound
std::optional<Assignment> sat_search(const GroundProblem& gp);

struct OracleVerdict {
    bool sat = false;
    Assignment witness;
};

// enumeration up to the enumeration bound, search up to the search bound
OracleVerdict brute_sat(const GroundProblem& gp, const OracleLimits& lim = {});

bool satisfies(const Assignment& a, const GroundClause& c);

// premises |= c, decided by search
bool entails(const GroundProblem& premises, const GroundClause& c);

// first ground instance of a clause false under the induced interpretation of
// the model (atoms covered by a positive literal are true, all others false)
std::optional<Clause> verify_model(const Signature& sig, std::span<const ConstrainedLiteral> model,
                                   std::span<const Clause> clauses);
Assignment induced_assignment(const Signature& sig, std::span<const ConstrainedLiteral> model);

enum class Redundancy { NonRedundant, Redundant, Skipped };

// Some ground instance of `learned` is neither in the ground pool nor entailed
// by the pool clauses strictly smaller under the ordering.  Clauses compare as
// multisets of literals.
Redundancy check_nonredundant(const Clause& learned, std::span<const Clause> pool, const InducedOrdering& ord,
                              std::size_t universe_cap = 24);

struct GenParams {
    std::size_t max_predicates = 3;
    std::size_t max_arity = 2;
    std::size_t max_domain = 3;
    std::size_t max_clauses = 12;
    std::size_t max_literals = 4;
    double constant_prob = 0.25;
    double share_prob = 0.5;  // reuse a clause variable instead of a new one
    std::uint64_t seed = 0;
};

Problem gen_random_instance(const GenParams& p);

// the P/Q chain family over domain a1..an with P of arity k
Problem gen_benchmark(std::size_t n, std::size_t k);

}  // namespace nrcl
