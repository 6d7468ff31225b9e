#pragma once

#include "nrcl/constrained.hpp"
#include "nrcl/problem.hpp"
#include "nrcl/solver.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nrcl {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

private:
    std::size_t line_, col_;
};

// Problem files:
//   domain a b c .
//   label: P(X,a) | -Q(X,Y) .
//   false .
// Uppercase-initial identifiers in argument position are variables.
Problem parse_problem(std::string_view text);
std::string render_problem(const Problem& p);

// Display syntax, as printed in traces and models: domain constants are
// constants, any other identifier is a variable.  Constraint right-hand
// variables are local to their part.
using VarScope = std::map<std::string, VarId, std::less<>>;
Literal parse_display_literal(std::string_view text, const Signature& sig, VarPool& pool, VarScope& scope);
Constraint parse_display_constraint(std::string_view text, const Signature& sig, VarPool& pool, VarScope& scope);
// `L :: pi`; a missing constraint means TOP
ConstrainedLiteral parse_constrained_literal(std::string_view text, const Signature& sig, VarPool& pool);

std::string render_model(std::span<const ConstrainedLiteral> model, const Signature& sig, const VarPool& pool);
std::vector<ConstrainedLiteral> parse_model(std::string_view text, const Signature& sig, VarPool& pool);

// `decide L :: pi`, `propagate C<n>`, and trace lines `RULE Decide | ... |
// [lvl n DECIDE] L :: pi`; other trace lines and `%` comments are skipped.
std::vector<ScriptItem> parse_script(std::string_view text);

std::string render_event(const TraceEvent& e);
// preprocessing notes as `%` lines, then one line per rule application
std::string render_trace(const RunResult& r);

}  // namespace nrcl
