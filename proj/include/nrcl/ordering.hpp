#pragma once

#include "nrcl/trail.hpp"

#include <algorithm>
#include <compare>
#include <vector>

namespace nrcl {

// Snapshot of the ordering induced by a trail on ground atoms, literals and
// clauses.  Atoms compare by the position of their defining entry (undefined
// atoms last), then by atom code, which follows predicate name and the
// domain order of the arguments.
class InducedOrdering {
public:
    explicit InducedOrdering(const Trail& t);

    const Signature& signature() const { return *sig_; }

    // trail position of the defining entry; size() of the snapshot for undefined
    std::size_t def_position(std::size_t code) const { return def_[code]; }

    std::strong_ordering compare_atoms(std::size_t a, std::size_t b) const;
    std::strong_ordering compare(const Literal& a, const Literal& b) const;
    // ground clauses as multisets of literals
    std::strong_ordering compare(const Clause& a, const Clause& b) const;

private:
    const Signature* sig_;
    std::vector<std::size_t> def_;
};

// Multiset extension of a total order: sort both sides descending and
// compare lexicographically, the longer side winning on a common prefix.
template <class T, class Cmp>
std::strong_ordering multiset_compare(std::vector<T> a, std::vector<T> b, Cmp cmp) {
    auto desc = [&](const T& x, const T& y) { return cmp(x, y) > 0; };
    std::sort(a.begin(), a.end(), desc);
    std::sort(b.begin(), b.end(), desc);
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        auto c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return a.size() <=> b.size();
}

}  // namespace nrcl
