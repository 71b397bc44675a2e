#ifndef MOGD_EXPERIMENT_HPP
#define MOGD_EXPERIMENT_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mogd/core.hpp"
#include "mogd/metrics.hpp"
#include "mogd/problems.hpp"

namespace mogd {

// Experiment orchestration: run MOGDM and the local-only baseline over the
// registry, persist reports/fronts/summaries, and emit performance-profile
// data.  All file formats are plain text; floats are written with 17
// significant digits so identical configs reproduce byte-identical output.

struct ExperimentConfig {
    std::vector<std::string> problems;           // registry names, or "all"
    std::vector<std::string> solvers = {"mogdm", "local-only"};
    int starts = 200;
    std::uint64_t seed = 0;
    int jobs = 0;
    std::string out_dir = "out";
    bool emit_csv = true;
    bool emit_json = true;
    bool emit_plotdata = false;
    /// When true (default) the wall_time column in CSVs is written as 0 so
    /// re-runs are byte-identical; JSON reports always carry real timings.
    bool deterministic_output = true;
    std::map<std::string, double> param_overrides;

    void validate() const;
};

/// Flat key = value format; '#' starts a comment.  Keys: problems, solvers,
/// starts, seed, jobs, out, emit, deterministic_output, param.<name>.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Applies "param.<field>" overrides onto defaults; throws on unknown keys
/// or range violations.
SolverParams params_for(const BoxProblem& p, const ExperimentConfig& cfg);

struct SummaryRow {
    std::string problem;
    int m = 0;
    int n = 0;
    std::string solver;
    int n_nondominated = 0;
    double hypervolume = 0;
    double delta = 0;
    long long f_evals = 0;
    double wall_time = 0;
};

std::string format_double(double v);  // %.17g

// --- writers / readers (round-trip tested) ---
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(const std::string& path);

void write_front_csv(const std::string& path, const std::string& solver,
                     const std::string& problem, const ParetoArchive& front);
std::vector<ParetoArchive::Entry> read_front_csv(const std::string& path, int n, int m);

void write_report_json(const std::string& path, const RunReport& report,
                       const MetricReport& metrics);

// --- commands (shared by the CLI binary and the tests) ---

struct RunOutputs {
    std::vector<SummaryRow> summary;
    std::vector<RunReport> reports;
};

/// Table-1 style protocol: per problem run every solver from the same Phase-0
/// starts, compute metrics against a reference shared across solvers, and
/// persist summary/fronts/reports per the emit flags.
RunOutputs cmd_run(const ExperimentConfig& cfg, std::ostream& log);

int cmd_front(const std::string& problem, const std::string& solver, int starts,
              std::uint64_t seed, const std::string& out_dir, int jobs, std::ostream& log);

/// metric: "hv" (benefit, inverted to cost), "delta" or "fevals".
int cmd_profile(const std::vector<std::string>& summary_paths, const std::string& metric,
                const std::string& out_dir, std::ostream& log);

/// Runtime invariant suites (V/A identities, dominance, archives, Jacobian
/// spot checks, hypervolume oracle cases).  Returns 0 when everything holds.
int cmd_check(std::ostream& log);

/// Metric block for one report; `all_fronts` supplies the shared reference.
MetricReport compute_metrics(const RunReport& report, const ProblemSpec& spec, const Vec& ref);

}  // namespace mogd

#endif
