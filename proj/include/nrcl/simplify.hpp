#pragma once

#include "nrcl/term.hpp"

#include <optional>
#include <vector>

namespace nrcl {

// matcher sigma with c*sigma a sub-multiset of d; variables of d are rigid
// and must not occur in c
std::optional<Substitution> subsumes(const Clause& c, const Clause& d);

bool is_tautology(const Clause& c);

// For c = C' v L and d = D v ~L*sigma with C'*sigma a sub-multiset of D,
// returns d without ~L*sigma.
std::optional<Clause> subsumption_resolvent(const Clause& c, const Clause& d);

struct SimplifyStep {
    enum class Kind { Tautology, StrictSubsumption, SubsumptionResolution };
    Kind kind;
    std::size_t target = 0;
    std::size_t by = 0;  // unused for tautologies
    Clause before;
    Clause after;        // replacement for subsumption resolution
};

// Deletes and shortens clauses in place until none of the three reductions
// applies.  Indices stay stable: deletions clear the `active` flag.
std::vector<SimplifyStep> simplify(std::vector<Clause>& clauses, std::vector<bool>& active);

}  // namespace nrcl
