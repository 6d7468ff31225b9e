#pragma once

#include "nrcl/term.hpp"

#include <string>
#include <vector>

namespace nrcl {

struct NamedClause {
    std::string label;  // may be empty
    Clause clause;
};

// A clause set over its signature; variables are numbered by `vars`.
struct Problem {
    Signature sig;
    VarPool vars;
    std::vector<NamedClause> clauses;

    std::vector<Clause> clause_list() const {
        std::vector<Clause> out;
        out.reserve(clauses.size());
        for (const auto& nc : clauses) out.push_back(nc.clause);
        return out;
    }
};

}  // namespace nrcl
