// Command-line front end: run experiments, build fronts, compute performance
// profiles, list problems and run the built-in invariant checks.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mogd/experiment.hpp"
#include "mogd/problems.hpp"

int main(int argc, char** argv) {
    CLI::App app{"mogd - multi-objective global descent solver and benchmark harness"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run solvers over a problem set and write reports");
    std::string config_path;
    std::string run_out;
    std::vector<std::string> run_problems;
    std::vector<std::string> run_solvers;
    int run_starts = -1;
    std::int64_t run_seed = -1;
    int run_jobs = -1;
    run->add_option("--config", config_path, "config file (key = value lines)");
    run->add_option("--out", run_out, "output directory");
    run->add_option("--problems", run_problems, "problem names or 'all'")->delimiter(',');
    run->add_option("--solver", run_solvers, "solver subset: mogdm,local-only")->delimiter(',');
    run->add_option("--starts", run_starts, "number of starts N");
    run->add_option("--seed", run_seed, "master seed");
    run->add_option("--jobs", run_jobs, "worker threads (0 = hardware)");

    // front
    auto* front = app.add_subcommand("front", "single problem/solver front with scatter data");
    std::string front_problem, front_solver = "mogdm", front_out = "out";
    int front_starts = 50, front_jobs = 0;
    std::uint64_t front_seed = 0;
    front->add_option("problem", front_problem, "problem name")->required();
    front->add_option("--solver", front_solver, "mogdm or local-only");
    front->add_option("--starts", front_starts, "number of starts N");
    front->add_option("--seed", front_seed, "master seed");
    front->add_option("--out", front_out, "output directory");
    front->add_option("--jobs", front_jobs, "worker threads");

    // profile
    auto* profile = app.add_subcommand("profile", "performance profiles from summary CSVs");
    std::vector<std::string> profile_inputs;
    std::string profile_metric = "hv", profile_out = "out";
    profile->add_option("summaries", profile_inputs, "summary.csv files")->required();
    profile->add_option("--metric", profile_metric, "hv, delta or fevals");
    profile->add_option("--out", profile_out, "output directory");

    // list-problems
    auto* list = app.add_subcommand("list-problems", "print the problem registry");

    // check
    auto* check = app.add_subcommand("check", "run the built-in invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // usage error
    }

    try {
        if (*run) {
            mogd::ExperimentConfig cfg;
            if (!config_path.empty()) cfg = mogd::parse_config_file(config_path);
            if (!run_problems.empty()) cfg.problems = run_problems;
            if (!run_solvers.empty()) cfg.solvers = run_solvers;
            if (run_starts > 0) cfg.starts = run_starts;
            if (run_seed >= 0) cfg.seed = static_cast<std::uint64_t>(run_seed);
            if (run_jobs >= 0) cfg.jobs = run_jobs;
            if (!run_out.empty()) cfg.out_dir = run_out;
            if (cfg.problems.empty()) cfg.problems = {"all"};
            mogd::cmd_run(cfg, std::cout);
            return 0;
        }
        if (*front)
            return mogd::cmd_front(front_problem, front_solver, front_starts, front_seed,
                                   front_out, front_jobs, std::cout);
        if (*profile) return mogd::cmd_profile(profile_inputs, profile_metric, profile_out,
                                               std::cout);
        if (*list) {
            for (const auto& name : mogd::problem_names()) {
                const auto& spec = mogd::lookup(name);
                std::cout << name << "  (m=" << spec.problem.m << ", n=" << spec.problem.n
                          << ")  " << (spec.multimodal ? "multimodal" : "unimodal") << "  ["
                          << spec.source << "]\n";
            }
            return 0;
        }
        if (*check) return mogd::cmd_check(std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
