#include "nrcl/ground_search.hpp"

#include <algorithm>

namespace nrcl {

GroundSearch::GroundSearch(const Signature& sig, std::span<const Literal> lits, const Constraint& pi)
    : n_(sig.domain_size()), bottom_(pi.is_bot()) {
    for (const auto& l : lits) collect_vars(l.atom.args, vars_);
    for (VarId v : pi.lvars())
        if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) vars_.push_back(v);

    auto slot = [&](Term t) -> std::int64_t {
        if (t.is_const()) return t.const_index();
        auto k = std::find(vars_.begin(), vars_.end(), t.var()) - vars_.begin();
        return -static_cast<std::int64_t>(k) - 1;
    };
    auto ready_depth = [](const std::vector<std::int64_t>& xs) {
        std::size_t d = 0;
        for (auto a : xs)
            if (a < 0) d = std::max(d, static_cast<std::size_t>(-a));
        return d;
    };

    lits_at_.resize(vars_.size() + 1);
    parts_at_.resize(vars_.size() + 1);
    for (std::size_t i = 0; i < lits.size(); ++i) {
        LitPlan lp{sig.atom_offset(lits[i].atom.pred), {}, lits[i].positive};
        for (Term t : lits[i].atom.args) lp.args.push_back(slot(t));
        lits_at_[ready_depth(lp.args)].push_back(i);
        lits_.push_back(std::move(lp));
    }
    if (!bottom_) {
        for (const auto& p : pi.parts()) {
            PartPlan pp{&p, {}};
            for (Term t : p.lhs) pp.lhs.push_back(slot(t));
            parts_at_[ready_depth(pp.lhs)].push_back(parts_.size());
            parts_.push_back(std::move(pp));
        }
    }
}

bool GroundSearch::part_violated(const PartPlan& pp) {
    scratch_.clear();
    for (auto a : pp.lhs)
        scratch_.push_back(Term::constant(static_cast<std::uint32_t>(a >= 0 ? a : digits_[static_cast<std::size_t>(-a - 1)])));
    return match_onto(pp.d->rhs, scratch_).has_value();
}

Substitution GroundSearch::grounding(std::span<const std::uint32_t> digits) const {
    Substitution s;
    for (std::size_t i = 0; i < vars_.size(); ++i) s.bind(vars_[i], Term::constant(digits[i]));
    return s;
}

}  // namespace nrcl
