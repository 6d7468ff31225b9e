#include "nrcl/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"differential harness: random instances against the ground oracle"};
    std::size_t count = 500;
    std::uint64_t first_seed = 1;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string out_path;
    bool audit = true, simplify = true;
    app.add_option("--count", count, "number of instances");
    app.add_option("--first-seed", first_seed, "seed of the first instance");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "JSON-lines report (default stdout)");
    app.add_flag("!--no-audit", audit, "skip runtime audits");
    app.add_flag("!--no-simplify", simplify, "skip preprocessing simplifications");
    CLI11_PARSE(app, argc, argv);

    std::vector<nlohmann::json> records(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            nrcl::GenParams gp;
            gp.seed = first_seed + i;
            auto problem = nrcl::gen_random_instance(gp);
            nrcl::RunConfig cfg;
            cfg.seed = gp.seed;
            cfg.audit = audit;
            cfg.simplify = simplify;
            auto c = nrcl::checked_run(problem, cfg);
            nlohmann::json rec;
            rec["seed"] = gp.seed;
            rec["verdict_nrcl"] = nrcl::to_string(c.run.verdict);
            rec["verdict_oracle"] = c.oracle_sat ? (*c.oracle_sat ? "Sat" : "Unsat") : "Skipped";
            rec["steps"] = c.run.stats.steps;
            rec["learned"] = c.run.learned.size();
            rec["audits_passed"] = c.run.violations.empty();
            records[i] = std::move(rec);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    std::size_t disagree = 0;
    for (const auto& r : records) {
        out << r.dump() << "\n";
        if (r["verdict_nrcl"] != r["verdict_oracle"] || !r["audits_passed"].get<bool>()) ++disagree;
    }
    std::cerr << count - disagree << "/" << count << " agree with clean audits\n";
    return disagree == 0 ? 0 : 2;
}
