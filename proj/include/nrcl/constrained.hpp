#pragma once

#include "nrcl/constraint.hpp"

#include <vector>

namespace nrcl {

struct ConstrainedLiteral {
    Literal lit;
    Constraint pi;

    bool operator==(const ConstrainedLiteral&) const = default;
};

// (base . sigma ; pi), denoting the literal base*sigma under pi.
// Left-hand variables of pi outside the instance are existential.
struct Closure {
    Literal base;
    Substitution sigma;
    Constraint pi;

    Literal instance() const { return sigma.apply(base); }
    ConstrainedLiteral as_literal() const { return {instance(), pi}; }
};

// (clause ; sigma ; pi), denoting the ground instances of clause*sigma under pi
struct ConstrainedClause {
    Clause clause;
    Substitution sigma;
    Constraint pi;

    Clause instance() const { return sigma.apply(clause); }
};

// left variables of pi that do not occur in the literal
std::vector<VarId> free_vars(const Literal& l, const Constraint& pi);

// sorted, duplicate free
std::vector<Literal> gnd(const ConstrainedLiteral& cl, std::size_t domain_size);
std::vector<Clause> gnd(const ConstrainedClause& cc, std::size_t domain_size);

bool is_empty(const ConstrainedLiteral& cl, std::size_t domain_size);
bool is_empty(const ConstrainedClause& cc, std::size_t domain_size);

// fresh copy: literal variables, left and right constraint variables
ConstrainedLiteral rename_apart(const ConstrainedLiteral& cl, VarPool& pool);

// Operands are renamed apart internally; the result keeps cl1's variables
// where the unifier allows.
ConstrainedLiteral conjunction(const ConstrainedLiteral& cl1, const ConstrainedLiteral& cl2, VarPool& pool);

// A piece of a difference.  `inst` instantiates cl1's literal into the
// piece's literal: cl1.lit * inst == piece.lit.
struct DiffPiece {
    Substitution inst;
    ConstrainedLiteral cl;
};

// Pairwise disjoint pieces covering Gnd(cl1) minus Gnd(cl2); compares atoms
// (polarity ignored).  BOT pieces are dropped, empty ones are kept.
std::vector<DiffPiece> difference(const ConstrainedLiteral& cl1, const ConstrainedLiteral& cl2, VarPool& pool);

// Instantiates free left-hand variables, lowest id first, constants in
// domain order; each instantiation is recorded in the closure substitution.
std::vector<Closure> elim_free_vars(const Closure& c, std::size_t domain_size);

}  // namespace nrcl
