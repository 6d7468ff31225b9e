#pragma once

#include "nrcl/constrained.hpp"

#include <map>
#include <set>
#include <string>

namespace nrcl {

// Display syntax: `~P(x,a)`, lowercase variables.  Problem syntax:
// `-P(X,a)`, variables with an uppercase initial.
enum class Syntax { Display, Problem };

// Assigns printable names to variables for one rendered line.  The first
// variable with a given base name keeps it, later ones get primes (or a
// numeric suffix in problem syntax).  Display names never shadow constants.
class Namer {
public:
    Namer(const Signature& sig, const VarPool& pool, Syntax syntax = Syntax::Display)
        : sig_(&sig), pool_(&pool), syntax_(syntax) {}

    const std::string& name(VarId v);
    const Signature& signature() const { return *sig_; }
    Syntax syntax() const { return syntax_; }

private:
    const Signature* sig_;
    const VarPool* pool_;
    Syntax syntax_;
    std::map<VarId, std::string> names_;
    std::set<std::string> used_;
};

std::string render(Term t, Namer& n);
std::string render(const Atom& a, Namer& n);
std::string render(const Literal& l, Namer& n);
// `false` for the empty clause
std::string render(const Clause& c, Namer& n);
std::string render(const Constraint& pi, Namer& n);
std::string render(const Substitution& s, Namer& n);

// `L :: pi`
std::string render(const ConstrainedLiteral& cl, Namer& n);
std::string render(const ConstrainedLiteral& cl, const Signature& sig, const VarPool& pool);

// `(C ; sigma ; pi)`
std::string render_clause_triple(const Clause& c, const Substitution& s, const Constraint& pi, Namer& n);

}  // namespace nrcl
