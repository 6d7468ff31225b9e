#pragma once

#include "nrcl/constrained.hpp"
#include "nrcl/ground_search.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nrcl {

using ClauseIdx = std::size_t;

struct TrailEntry {
    Closure closure;
    Literal inst;           // closure.base * closure.sigma
    int decision_level = 0; // > 0 for decisions
    ClauseIdx reason = 0;   // meaningful for propagated entries
    std::size_t lit_index = 0;
    int level = 0;

    bool is_decision() const { return decision_level > 0; }
    ConstrainedLiteral literal() const { return {inst, closure.pi}; }
};

enum class Value : std::uint8_t { False, True, Undef };

// Annotated sequence of constrained closures.  Every covered ground atom is
// indexed to its defining entry, which also enforces strong consistency.
class Trail {
public:
    explicit Trail(const Signature& sig);

    const Signature& signature() const { return *sig_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const TrailEntry& operator[](std::size_t i) const { return entries_[i]; }
    const TrailEntry& back() const { return entries_.back(); }
    const std::vector<TrailEntry>& entries() const { return entries_; }

    int top_level() const { return entries_.empty() ? 0 : entries_.back().level; }
    // number of entries whose level is <= lvl
    std::size_t prefix_for_level(int lvl) const;

    // returns the atoms covered by the entry that were already defined
    // (empty when strong consistency is preserved)
    std::vector<std::size_t> push(TrailEntry e);
    void pop();
    void truncate(std::size_t n) {
        while (entries_.size() > n) pop();
    }

    // index of the defining entry among the first `limit` entries, or -1
    std::int64_t definer(std::size_t code, std::size_t limit) const {
        auto e = def_[code];
        return (e >= 0 && static_cast<std::size_t>(e) < limit) ? e : -1;
    }
    std::int64_t definer(std::size_t code) const { return def_[code]; }
    Value value(std::size_t code, bool positive, std::size_t limit) const {
        auto e = definer(code, limit);
        if (e < 0) return Value::Undef;
        return entries_[static_cast<std::size_t>(e)].inst.positive == positive ? Value::True : Value::False;
    }

    // entry indices with the given predicate, in trail order
    const std::vector<std::size_t>& entries_for(PredId p) const { return by_pred_[raw(p)]; }

    // ground atom codes covered by a constrained literal
    std::vector<std::size_t> covered_codes(const ConstrainedLiteral& cl) const;

    // scan-based lookup, independent of the atom index
    std::optional<std::size_t> definer_by_scan(const Atom& ground) const;

private:
    const Signature* sig_;
    std::vector<TrailEntry> entries_;
    std::vector<std::int32_t> def_;
    std::vector<std::vector<std::size_t>> by_pred_;
};

Value value_of(const Trail& t, const Literal& ground);
int level_of(const Trail& t, const Literal& ground);

// Optional decision overlay: atoms of `codes` are treated as defined by a
// virtual entry placed after the prefix, with the given polarity.
struct Overlay {
    std::span<const std::uint8_t> covered;  // indexed by atom code, may be empty
    bool positive = true;
};

struct GroundView {
    const Trail* trail;
    std::size_t limit;
    Overlay overlay{};

    // value and level (level is -1 for undefined)
    std::pair<Value, int> eval(std::size_t code, bool positive) const {
        auto e = trail->definer(code, limit);
        if (e >= 0) {
            const auto& en = (*trail)[static_cast<std::size_t>(e)];
            return {en.inst.positive == positive ? Value::True : Value::False, en.level};
        }
        if (!overlay.covered.empty() && overlay.covered[code])
            return {overlay.positive == positive ? Value::True : Value::False, -2};
        return {Value::Undef, -1};
    }
};

GroundView full_view(const Trail& t);
GroundView level_view(const Trail& t, int lvl);

enum class ClauseValue { True, False, Mixed, Empty };

ClauseValue clause_value(const GroundView& v, std::span<const Literal> lits, const Constraint& pi);
ClauseValue clause_value(const Trail& t, const ConstrainedClause& cc);

// some covered instance has every literal false
bool has_false_instance(const GroundView& v, std::span<const Literal> lits, const Constraint& pi);

// some covered instance has exactly one undefined occurrence, the rest false
bool propagates(const GroundView& v, std::span<const Literal> lits, const Constraint& pi);

// some covered instance is false with exactly one occurrence of level `lvl`
bool is_assertive(const GroundView& v, std::span<const Literal> lits, const Constraint& pi, int lvl);

// some covered instance has fewer than `need` occurrences of level `lvl`
bool has_instance_with_few_at_level(const GroundView& v, std::span<const Literal> lits, const Constraint& pi,
                                    int lvl, int need);

struct BlockWitness {
    Substitution grounding;       // over the clause variables
    std::size_t atom1 = 0, atom2 = 0;  // distinct atoms falsified by the decision
};

// Decision (as overlay) blocked by the clause: an instance false under
// trail+decision with two distinct literals falsified by the decision.
std::optional<BlockWitness> blocking_instance(const GroundView& with_decision, const Clause& clause);

// ground atoms true in the induced interpretation
std::vector<std::size_t> induced_interpretation(const Trail& t);

}  // namespace nrcl
