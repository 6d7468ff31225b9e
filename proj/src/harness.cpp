#include "nrcl/harness.hpp"

#include <chrono>

namespace nrcl {

bool CheckedRun::agrees() const {
    if (run.verdict != Verdict::Sat && run.verdict != Verdict::Unsat) return false;
    if (model_failure) return false;
    if (!oracle_sat) return true;
    return *oracle_sat == (run.verdict == Verdict::Sat);
}

CheckedRun checked_run(const Problem& p, const RunConfig& cfg, const OracleLimits& lim) {
    CheckedRun out;
    auto t0 = std::chrono::steady_clock::now();
    out.run = solve(p, cfg);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto input = p.clause_list();
    try {
        auto gp = ground_problem(p.sig, input, lim);
        out.oracle_sat = brute_sat(gp, lim).sat;
    } catch (const OracleRefusal& e) {
        out.oracle_note = e.what();
    }
    if (out.run.verdict == Verdict::Sat) out.model_failure = verify_model(p.sig, out.run.model, input);
    return out;
}

}  // namespace nrcl
