#include "nrcl/harness.hpp"
#include "nrcl/io.hpp"
#include "nrcl/render.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;
constexpr int kExitCheck = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EPR decision procedure with non-redundant clause learning"};
    std::string input, trace_path, model_path, script_path, bench;
    nrcl::RunConfig cfg;
    bool check = false, no_index = false, no_simplify = false;
    app.add_option("--input", input, "problem file");
    app.add_option("--bench", bench, "generate the chain benchmark for domain size n and arity k")->check(
        [](const std::string& s) { return s.find(',') == std::string::npos ? "expected n,k" : ""; });
    app.add_option("--trace", trace_path, "write the rule trace");
    app.add_option("--model", model_path, "write the model on Sat");
    app.add_option("--seed", cfg.seed, "decision order seed");
    app.add_option("--max-steps", cfg.max_steps, "rule application cap")->check(CLI::PositiveNumber);
    app.add_option("--script", script_path, "decision script");
    app.add_flag("--check", check, "audit every rule and compare with the ground oracle");
    app.add_flag("--no-index", no_index, "disable the two-level clause index");
    app.add_flag("--no-simplify", no_simplify, "skip preprocessing simplifications");
    CLI11_PARSE(app, argc, argv);

    try {
        if (input.empty() == bench.empty()) throw std::runtime_error("exactly one of --input and --bench is required");
        nrcl::Problem problem;
        if (!input.empty()) {
            problem = nrcl::parse_problem(read_file(input));
        } else {
            auto comma = bench.find(',');
            problem = nrcl::gen_benchmark(std::stoul(bench.substr(0, comma)), std::stoul(bench.substr(comma + 1)));
        }
        if (!script_path.empty()) cfg.script = nrcl::parse_script(read_file(script_path));
        cfg.use_index = !no_index;
        cfg.simplify = !no_simplify;
        cfg.audit = check;

        nrcl::CheckedRun checked;
        if (check) checked = nrcl::checked_run(problem, cfg);
        else checked.run = nrcl::solve(problem, cfg);
        const auto& r = checked.run;

        if (!trace_path.empty()) write_file(trace_path, nrcl::render_trace(r));
        if (!model_path.empty() && r.verdict == nrcl::Verdict::Sat)
            write_file(model_path, nrcl::render_model(r.model, problem.sig, r.vars));

        std::cout << "verdict " << nrcl::to_string(r.verdict) << "\n"
                  << "steps " << r.stats.steps << " decisions " << r.stats.decisions << " propagations "
                  << r.stats.propagations << " conflicts " << r.stats.conflicts << " backjumps " << r.stats.backjumps
                  << " learned " << r.learned.size() << "\n";
        if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";

        if (check) {
            bool bad = false;
            for (const auto& v : r.violations) {
                std::cerr << "audit: " << v << "\n";
                bad = true;
            }
            if (checked.oracle_sat) std::cout << "oracle " << (*checked.oracle_sat ? "Sat" : "Unsat") << "\n";
            else std::cout << "oracle skipped: " << checked.oracle_note << "\n";
            if (checked.model_failure) {
                nrcl::Namer n(problem.sig, r.vars);
                std::cerr << "model falsifies " << nrcl::render(*checked.model_failure, n) << "\n";
            }
            if (r.verdict == nrcl::Verdict::Sat || r.verdict == nrcl::Verdict::Unsat) bad = bad || !checked.agrees();
            if (bad) return kExitCheck;
        }
        switch (r.verdict) {
            case nrcl::Verdict::Sat: return kExitSat;
            case nrcl::Verdict::Unsat: return kExitUnsat;
            default: return kExitError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
