#pragma once

#include "nrcl/constraint.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nrcl {

// Backtracking over the groundings of a literal sequence under a
// constraint.  Literals are reported as soon as they become ground, and
// constraint parts prune as soon as their left side is ground.
class GroundSearch {
public:
    GroundSearch(const Signature& sig, std::span<const Literal> lits, const Constraint& pi);

    const std::vector<VarId>& vars() const { return vars_; }
    std::size_t literal_count() const { return lits_.size(); }
    bool is_empty_constraint() const { return bottom_; }

    // visit(index, atom_code, positive, state&) -> false prunes
    // leaf(state&, digits) -> true stops the search
    // returns true if stopped by leaf
    template <class State, class Visit, class Leaf>
    bool run(State init, Visit&& visit, Leaf&& leaf) {
        if (bottom_) return false;
        digits_.assign(vars_.size(), 0);
        return step(0, init, visit, leaf);
    }

    Substitution grounding(std::span<const std::uint32_t> digits) const;
    std::span<const std::uint32_t> digits() const { return digits_; }

private:
    struct LitPlan {
        std::size_t offset;
        std::vector<std::int64_t> args;  // >=0 constant index, <0 encodes -(var slot)-1
        bool positive;
    };
    struct PartPlan {
        const Disequation* d;
        std::vector<std::int64_t> lhs;
    };

    std::size_t code_of(const LitPlan& lp) const {
        std::size_t code = 0;
        for (auto a : lp.args) code = code * n_ + static_cast<std::size_t>(a >= 0 ? a : digits_[static_cast<std::size_t>(-a - 1)]);
        return lp.offset + code;
    }
    bool part_violated(const PartPlan& pp);

    template <class State, class Visit, class Leaf>
    bool step(std::size_t depth, State state, Visit& visit, Leaf& leaf) {
        for (std::size_t i : lits_at_[depth])
            if (!visit(i, code_of(lits_[i]), lits_[i].positive, state)) return false;
        for (std::size_t i : parts_at_[depth])
            if (part_violated(parts_[i])) return false;
        if (depth == vars_.size()) return leaf(state, std::span<const std::uint32_t>(digits_));
        for (std::uint32_t d = 0; d < n_; ++d) {
            digits_[depth] = d;
            if (step(depth + 1, state, visit, leaf)) return true;
        }
        return false;
    }

    std::size_t n_;
    bool bottom_ = false;
    std::vector<VarId> vars_;
    std::vector<LitPlan> lits_;
    std::vector<PartPlan> parts_;
    std::vector<std::vector<std::size_t>> lits_at_;
    std::vector<std::vector<std::size_t>> parts_at_;
    std::vector<std::uint32_t> digits_;
    Args scratch_;
};

}  // namespace nrcl
