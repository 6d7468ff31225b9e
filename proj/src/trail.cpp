#include "nrcl/trail.hpp"

#include <algorithm>
#include <stdexcept>

namespace nrcl {

namespace {
constexpr std::size_t kMaxAtoms = std::size_t{1} << 26;
}

Trail::Trail(const Signature& sig) : sig_(&sig), by_pred_(sig.pred_count()) {
    if (sig.atom_count() > kMaxAtoms) throw std::length_error("ground atom universe too large for the atom index");
    def_.assign(sig.atom_count(), -1);
}

std::size_t Trail::prefix_for_level(int lvl) const {
    std::size_t n = 0;
    while (n < entries_.size() && entries_[n].level <= lvl) ++n;
    return n;
}

std::vector<std::size_t> Trail::covered_codes(const ConstrainedLiteral& cl) const {
    std::vector<std::size_t> out;
    std::span<const Literal> one(&cl.lit, 1);
    GroundSearch gs(*sig_, one, cl.pi);
    std::size_t current = 0;
    gs.run(
        0,
        [&](std::size_t, std::size_t code, bool, int&) {
            current = code;
            return true;
        },
        [&](int&, std::span<const std::uint32_t>) {
            out.push_back(current);
            return false;
        });
    // free variables may repeat an atom
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> Trail::push(TrailEntry e) {
    std::vector<std::size_t> clashes;
    auto idx = static_cast<std::int32_t>(entries_.size());
    for (std::size_t code : covered_codes(e.literal())) {
        if (def_[code] >= 0) clashes.push_back(code);
        else def_[code] = idx;
    }
    by_pred_[raw(e.inst.atom.pred)].push_back(entries_.size());
    entries_.push_back(std::move(e));
    return clashes;
}

void Trail::pop() {
    auto idx = static_cast<std::int32_t>(entries_.size() - 1);
    for (std::size_t code : covered_codes(entries_.back().literal()))
        if (def_[code] == idx) def_[code] = -1;
    by_pred_[raw(entries_.back().inst.atom.pred)].pop_back();
    entries_.pop_back();
}

std::optional<std::size_t> Trail::definer_by_scan(const Atom& ground) const {
    for (std::size_t i : by_pred_[raw(ground.pred)]) {
        const auto& e = entries_[i];
        auto m = match_onto(e.inst.atom, ground);
        if (!m) continue;
        // free of existential variables: the constraint only mentions literal variables
        if (!violates(*m, e.closure.pi)) return i;
    }
    return std::nullopt;
}

Value value_of(const Trail& t, const Literal& ground) {
    auto d = t.definer_by_scan(ground.atom);
    if (!d) return Value::Undef;
    return t[*d].inst.positive == ground.positive ? Value::True : Value::False;
}

int level_of(const Trail& t, const Literal& ground) {
    auto d = t.definer_by_scan(ground.atom);
    if (!d) throw std::logic_error("level of an undefined literal");
    return t[*d].level;
}

GroundView full_view(const Trail& t) { return GroundView{&t, t.size(), {}}; }
GroundView level_view(const Trail& t, int lvl) { return GroundView{&t, t.prefix_for_level(lvl), {}}; }

namespace {

GroundSearch search_for(const GroundView& v, std::span<const Literal> lits, const Constraint& pi) {
    return GroundSearch(v.trail->signature(), lits, pi);
}

struct Nothing {};

}  // namespace

bool has_false_instance(const GroundView& v, std::span<const Literal> lits, const Constraint& pi) {
    auto gs = search_for(v, lits, pi);
    return gs.run(
        Nothing{}, [&](std::size_t, std::size_t code, bool pos, Nothing&) { return v.eval(code, pos).first == Value::False; },
        [](Nothing&, auto) { return true; });
}

ClauseValue clause_value(const GroundView& v, std::span<const Literal> lits, const Constraint& pi) {
    auto gs = search_for(v, lits, pi);
    bool any = gs.run(Nothing{}, [](std::size_t, std::size_t, bool, Nothing&) { return true; },
                      [](Nothing&, auto) { return true; });
    if (!any) return ClauseValue::Empty;
    // instance with some non-false literal
    bool not_all_false = gs.run(
        false,
        [&](std::size_t, std::size_t code, bool pos, bool& seen) {
            seen = seen || v.eval(code, pos).first != Value::False;
            return true;
        },
        [](bool& seen, auto) { return seen; });
    if (!not_all_false) return ClauseValue::False;
    bool some_without_true = gs.run(
        Nothing{}, [&](std::size_t, std::size_t code, bool pos, Nothing&) { return v.eval(code, pos).first != Value::True; },
        [](Nothing&, auto) { return true; });
    return some_without_true ? ClauseValue::Mixed : ClauseValue::True;
}

ClauseValue clause_value(const Trail& t, const ConstrainedClause& cc) {
    Clause inst = cc.instance();
    return clause_value(full_view(t), inst.lits, cc.pi);
}

bool propagates(const GroundView& v, std::span<const Literal> lits, const Constraint& pi) {
    auto gs = search_for(v, lits, pi);
    return gs.run(
        0,
        [&](std::size_t, std::size_t code, bool pos, int& undef) {
            auto val = v.eval(code, pos).first;
            if (val == Value::True) return false;
            if (val == Value::Undef) ++undef;
            return undef <= 1;
        },
        [](int& undef, auto) { return undef == 1; });
}

bool is_assertive(const GroundView& v, std::span<const Literal> lits, const Constraint& pi, int lvl) {
    auto gs = search_for(v, lits, pi);
    return gs.run(
        0,
        [&](std::size_t, std::size_t code, bool pos, int& top) {
            auto [val, l] = v.eval(code, pos);
            if (val != Value::False) return false;
            if (l == lvl) ++top;
            return top <= 1;
        },
        [](int& top, auto) { return top == 1; });
}

bool has_instance_with_few_at_level(const GroundView& v, std::span<const Literal> lits, const Constraint& pi,
                                    int lvl, int need) {
    auto gs = search_for(v, lits, pi);
    return gs.run(
        0,
        [&](std::size_t, std::size_t code, bool pos, int& at) {
            if (v.eval(code, pos).second == lvl) ++at;
            return at < need;
        },
        [](int&, auto) { return true; });
}

std::optional<BlockWitness> blocking_instance(const GroundView& v, const Clause& clause) {
    struct St {
        std::int64_t first = -1;
        std::int64_t second = -1;
    };
    auto gs = search_for(v, clause.lits, Constraint::top());
    std::optional<BlockWitness> out;
    gs.run(
        St{},
        [&](std::size_t, std::size_t code, bool pos, St& st) {
            auto [val, l] = v.eval(code, pos);
            if (val != Value::False) return false;
            if (l == -2) {
                auto c = static_cast<std::int64_t>(code);
                if (st.first < 0) st.first = c;
                else if (st.first != c && st.second < 0) st.second = c;
            }
            return true;
        },
        [&](St& st, std::span<const std::uint32_t> digits) {
            if (st.second < 0) return false;
            out = BlockWitness{gs.grounding(digits), static_cast<std::size_t>(st.first),
                               static_cast<std::size_t>(st.second)};
            return true;
        });
    return out;
}

std::vector<std::size_t> induced_interpretation(const Trail& t) {
    std::vector<std::size_t> out;
    for (std::size_t code = 0; code < t.signature().atom_count(); ++code) {
        auto e = t.definer(code);
        if (e >= 0 && t[static_cast<std::size_t>(e)].inst.positive) out.push_back(code);
    }
    return out;
}

}  // namespace nrcl
