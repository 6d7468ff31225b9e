#pragma once

#include "nrcl/oracle.hpp"
#include "nrcl/solver.hpp"

#include <optional>
#include <string>

namespace nrcl {

// A solver run cross-checked against the ground oracle.
struct CheckedRun {
    RunResult run;
    std::optional<bool> oracle_sat;     // empty when the oracle refused
    std::optional<Clause> model_failure;  // first ground clause falsified by the model
    std::string oracle_note;
    double seconds = 0;

    bool agrees() const;
    bool clean() const { return agrees() && run.violations.empty(); }
};

CheckedRun checked_run(const Problem& p, const RunConfig& cfg, const OracleLimits& lim = {});

}  // namespace nrcl
