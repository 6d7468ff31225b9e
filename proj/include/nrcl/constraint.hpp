#pragma once

#include "nrcl/term.hpp"

#include <optional>
#include <vector>

namespace nrcl {

// lhs != rhs over equal-length tuples.  Right-hand variables are local to
// the part and never appear in any substitution applied from outside.
struct Disequation {
    Args lhs;
    Args rhs;

    bool operator==(const Disequation&) const = default;
};

// Conjunction of disequations.  No parts means TOP; the bot flag means BOT.
class Constraint {
public:
    Constraint() = default;
    static Constraint top() { return Constraint(); }
    static Constraint bot() {
        Constraint c;
        c.bot_ = true;
        return c;
    }
    static Constraint of(std::vector<Disequation> parts) {
        Constraint c;
        c.parts_ = std::move(parts);
        return c;
    }

    bool is_top() const { return !bot_ && parts_.empty(); }
    bool is_bot() const { return bot_; }
    const std::vector<Disequation>& parts() const { return parts_; }

    void add(Disequation d) {
        if (!bot_) parts_.push_back(std::move(d));
    }
    Constraint conjoin(const Constraint& other) const;

    // substitutes into left-hand sides only
    Constraint apply(const Substitution& s) const;

    std::vector<VarId> lvars() const;
    std::vector<VarId> rvars() const;

    bool operator==(const Constraint&) const = default;

private:
    bool bot_ = false;
    std::vector<Disequation> parts_;
};

Constraint normalize(const Constraint& c);

// C1, C2, left/right disjointness, pairwise right-hand disjointness
bool is_normal_form(const Constraint& c);

std::vector<Substitution> induced_substitutions(const Constraint& c);

// true iff delta is not a solution; delta must ground every left variable
bool violates(const Substitution& delta, const Constraint& c);

// exhaustive, assignments in lexicographic order of `vars`
std::vector<Substitution> solutions(const Constraint& c, std::span<const VarId> vars, std::size_t domain_size);

// lexicographically least solution over `vars`; variables of `vars` not
// constrained stay at the first constant
std::optional<Substitution> find_solution_enum(const Constraint& c, std::span<const VarId> vars,
                                               std::size_t domain_size);

bool is_satisfiable(const Constraint& c, std::size_t domain_size);

// renames right-hand variables with fresh ones (keeps left-hand sides)
Constraint rename_rhs_fresh(const Constraint& c, VarPool& pool);

}  // namespace nrcl
