#include "nrcl/ordering.hpp"

#include <algorithm>

namespace nrcl {

InducedOrdering::InducedOrdering(const Trail& t) : sig_(&t.signature()), def_(t.signature().atom_count()) {
    for (std::size_t code = 0; code < def_.size(); ++code) {
        auto e = t.definer(code);
        def_[code] = e < 0 ? t.size() : static_cast<std::size_t>(e);
    }
}

std::strong_ordering InducedOrdering::compare_atoms(std::size_t a, std::size_t b) const {
    if (auto c = def_[a] <=> def_[b]; c != 0) return c;
    return a <=> b;
}

namespace {

// negative literal above the positive one on the same atom
std::strong_ordering polarity_rank(bool a_pos, bool b_pos) {
    return static_cast<int>(!a_pos) <=> static_cast<int>(!b_pos);
}

}  // namespace

std::strong_ordering InducedOrdering::compare(const Literal& a, const Literal& b) const {
    if (auto c = compare_atoms(sig_->atom_code(a.atom), sig_->atom_code(b.atom)); c != 0) return c;
    return polarity_rank(a.positive, b.positive);
}

std::strong_ordering InducedOrdering::compare(const Clause& a, const Clause& b) const {
    // abstract literals: (defining position, polarity)
    using Abstract = std::pair<std::size_t, bool>;
    auto abstract = [&](const Clause& c) {
        std::vector<Abstract> out;
        for (const auto& l : c.lits) out.emplace_back(def_[sig_->atom_code(l.atom)], l.positive);
        return out;
    };
    auto abs_cmp = [](const Abstract& x, const Abstract& y) {
        if (auto c = x.first <=> y.first; c != 0) return c;
        return polarity_rank(x.second, y.second);
    };
    if (auto c = multiset_compare(abstract(a), abstract(b), abs_cmp); c != 0) return c;
    return multiset_compare(a.lits, b.lits, [&](const Literal& x, const Literal& y) { return compare(x, y); });
}

}  // namespace nrcl
