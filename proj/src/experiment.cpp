#include "mogd/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mogd/gdf.hpp"
#include "mogd/globalsearch.hpp"

namespace mogd {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// config
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    if (problems.empty()) throw ContractError("config: at least one problem required");
    if (solvers.empty()) throw ContractError("config: at least one solver required");
    for (const auto& s : solvers)
        if (s != "mogdm" && s != "local-only")
            throw ContractError("config: unknown solver '" + s + "'");
    if (starts < 1) throw ContractError("config: starts must be >= 1");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::string> resolve_problems(const std::vector<std::string>& names) {
    if (names.size() == 1 && names[0] == "all") return problem_names();
    for (const auto& n : names) lookup(n);  // throws NotFoundError early
    return names;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ContractError("config: expected key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "problems")
            cfg.problems = split_list(value);
        else if (key == "solvers")
            cfg.solvers = split_list(value);
        else if (key == "starts")
            cfg.starts = std::stoi(value);
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "jobs")
            cfg.jobs = std::stoi(value);
        else if (key == "out")
            cfg.out_dir = value;
        else if (key == "emit") {
            cfg.emit_csv = cfg.emit_json = cfg.emit_plotdata = false;
            for (const auto& e : split_list(value)) {
                if (e == "csv")
                    cfg.emit_csv = true;
                else if (e == "json")
                    cfg.emit_json = true;
                else if (e == "plotdata")
                    cfg.emit_plotdata = true;
                else
                    throw ContractError("config: unknown emit flag '" + e + "'");
            }
        } else if (key == "deterministic_output")
            cfg.deterministic_output = (value == "true" || value == "1");
        else if (key.rfind("param.", 0) == 0)
            cfg.param_overrides[key.substr(6)] = std::stod(value);
        else
            throw ContractError("config: unknown key '" + key + "'");
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("config file not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

SolverParams params_for(const BoxProblem& p, const ExperimentConfig& cfg) {
    SolverParams sp = SolverParams::defaults_for(p);
    sp.seed = cfg.seed;
    sp.n_starts = cfg.starts;
    for (const auto& [key, value] : cfg.param_overrides) {
        if (key == "mu_ini")
            sp.mu_ini = value;
        else if (key == "rho_ini")
            sp.rho_ini = value;
        else if (key == "rho_L")
            sp.rho_L = value;
        else if (key == "rho_U")
            sp.rho_U = value;
        else if (key == "rho_hat")
            sp.rho_hat = value;
        else if (key == "mu_hat")
            sp.mu_hat = value;
        else if (key == "kappa")
            sp.kappa = value;
        else if (key == "eps")
            sp.eps_neighborhood = value;
        else if (key == "alpha_bar_U")
            sp.alpha_bar_U = value;
        else if (key == "beta")
            sp.beta = value;
        else if (key == "r")
            sp.r = value;
        else if (key == "delta")
            sp.delta = value;
        else if (key == "tau")
            sp.tau = value;
        else if (key == "c")
            sp.c = value;
        else if (key == "l")
            sp.l = static_cast<int>(value);
        else if (key == "max_param_reductions")
            sp.max_param_reductions = static_cast<int>(value);
        else
            throw ContractError("config: unknown parameter override '" + key + "'");
    }
    sp.validate();
    return sp;
}

// ---------------------------------------------------------------------------
// formatting / persistence
// ---------------------------------------------------------------------------

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "problem,m,n,solver,n_nondominated,hypervolume,delta,f_evals,wall_time\n";
    for (const auto& r : rows) {
        out << r.problem << ',' << r.m << ',' << r.n << ',' << r.solver << ','
            << r.n_nondominated << ',' << format_double(r.hypervolume) << ','
            << format_double(r.delta) << ',' << r.f_evals << ',' << format_double(r.wall_time)
            << '\n';
    }
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("summary file not found: " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string field;
        SummaryRow r;
        std::getline(ss, r.problem, ',');
        std::getline(ss, field, ',');
        r.m = std::stoi(field);
        std::getline(ss, field, ',');
        r.n = std::stoi(field);
        std::getline(ss, r.solver, ',');
        std::getline(ss, field, ',');
        r.n_nondominated = std::stoi(field);
        std::getline(ss, field, ',');
        r.hypervolume = std::stod(field);
        std::getline(ss, field, ',');
        r.delta = std::stod(field);
        std::getline(ss, field, ',');
        r.f_evals = std::stoll(field);
        std::getline(ss, field, ',');
        r.wall_time = std::stod(field);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_front_csv(const std::string& path, const std::string& solver,
                     const std::string& problem, const ParetoArchive& front) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (front.empty()) {
        out << "solver,problem\n";
        return;
    }
    const int n = static_cast<int>(front.entries()[0].z.size());
    const int m = static_cast<int>(front.entries()[0].f.size());
    out << "solver,problem";
    for (int i = 0; i < n; ++i) out << ",z" << (i + 1);
    for (int j = 0; j < m; ++j) out << ",f" << (j + 1);
    out << '\n';
    for (const auto& e : front.entries()) {
        out << solver << ',' << problem;
        for (int i = 0; i < n; ++i) out << ',' << format_double(e.z[i]);
        for (int j = 0; j < m; ++j) out << ',' << format_double(e.f[j]);
        out << '\n';
    }
}

std::vector<ParetoArchive::Entry> read_front_csv(const std::string& path, int n, int m) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("front file not found: " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<ParetoArchive::Entry> entries;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');  // solver
        std::getline(ss, field, ',');  // problem
        ParetoArchive::Entry e;
        e.z = Vec(n);
        e.f = Vec(m);
        for (int i = 0; i < n; ++i) {
            std::getline(ss, field, ',');
            e.z[i] = std::stod(field);
        }
        for (int j = 0; j < m; ++j) {
            std::getline(ss, field, ',');
            e.f[j] = std::stod(field);
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

namespace {

json archive_to_json(const ParetoArchive& a) {
    json arr = json::array();
    for (const auto& e : a.entries()) {
        json item;
        item["z"] = std::vector<double>(e.z.data(), e.z.data() + e.z.size());
        item["f"] = std::vector<double>(e.f.data(), e.f.data() + e.f.size());
        arr.push_back(std::move(item));
    }
    return arr;
}

}  // namespace

void write_report_json(const std::string& path, const RunReport& report,
                       const MetricReport& metrics) {
    json j;
    j["problem"] = report.problem;
    j["solver"] = report.solver;
    j["seed"] = report.seed;
    j["f_evals"] = report.counters.f_evals;
    j["jac_evals"] = report.counters.jac_evals;
    j["wall_time_seconds"] = report.wall_time_seconds;
    j["phase1_iterations"] = report.phase1_iterations;
    j["phase2_descent_steps"] = report.phase2_descent_steps;
    j["sweeps"] = report.sweeps;
    j["escapes"] = report.escapes;
    j["wpf"] = archive_to_json(report.wpf);
    j["wpfg"] = archive_to_json(report.wpfg);
    j["pf"] = archive_to_json(report.pf);
    j["pfg"] = archive_to_json(report.pfg);
    j["metrics"] = {{"hypervolume", metrics.hypervolume},
                    {"delta", metrics.delta_spread},
                    {"delta_kind", metrics.delta_kind},
                    {"n_nondominated", metrics.n_nondominated},
                    {"reference",
                     std::vector<double>(metrics.reference.data(),
                                         metrics.reference.data() + metrics.reference.size())}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

MetricReport compute_metrics(const RunReport& report, const ProblemSpec& spec, const Vec& ref) {
    MetricReport mr;
    mr.reference = ref;
    mr.n_nondominated = static_cast<int>(report.pfg.size());
    mr.f_evals = report.counters.f_evals;
    const auto front = report.pfg.objective_vectors();
    if (spec.problem.m <= 3 && !front.empty()) mr.hypervolume = hypervolume(front, ref).value;
    if (spec.problem.m == 2) {
        mr.delta_kind = "delta2";
        std::pair<Vec, Vec> extremes;
        if (auto oracle = true_front_sample(spec, 512)) {
            auto pts = *oracle;
            std::sort(pts.begin(), pts.end(),
                      [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
            extremes = {pts.front(), pts.back()};
        } else {
            auto pts = front;
            std::sort(pts.begin(), pts.end(),
                      [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
            extremes = {pts.front(), pts.back()};
        }
        mr.delta_spread = delta_spread(front, extremes);
    } else {
        mr.delta_kind = "nn-gap-dev";
        mr.delta_spread = nn_gap_deviation(front);
    }
    return mr;
}

// ---------------------------------------------------------------------------
// cmd_run
// ---------------------------------------------------------------------------

RunOutputs cmd_run(const ExperimentConfig& cfg_in, std::ostream& log) {
    ExperimentConfig cfg = cfg_in;
    cfg.problems = resolve_problems(cfg.problems);
    cfg.validate();
    if (cfg.emit_csv || cfg.emit_json || cfg.emit_plotdata) fs::create_directories(cfg.out_dir);

    RunOutputs outputs;
    for (const auto& pname : cfg.problems) {
        const ProblemSpec& spec = lookup(pname);
        SolverParams sp = params_for(spec.problem, cfg);

        std::vector<RunReport> reports;
        for (const auto& solver : cfg.solvers) {
            log << "[run] " << pname << " / " << solver << " (N=" << sp.n_starts << ")\n";
            reports.push_back(solver == "mogdm" ? mogdm_front(spec.problem, sp, cfg.jobs)
                                                : local_only_front(spec.problem, sp, cfg.jobs));
        }
        // shared reference over the union of the solvers' fronts
        std::vector<std::vector<Vec>> fronts;
        for (const auto& r : reports) fronts.push_back(r.pfg.objective_vectors());
        const Vec ref = shared_reference(fronts);

        for (std::size_t s = 0; s < reports.size(); ++s) {
            const auto& report = reports[s];
            const MetricReport mr = compute_metrics(report, spec, ref);
            SummaryRow row;
            row.problem = pname;
            row.m = spec.problem.m;
            row.n = spec.problem.n;
            row.solver = cfg.solvers[s];
            row.n_nondominated = mr.n_nondominated;
            row.hypervolume = mr.hypervolume;
            row.delta = mr.delta_spread;
            row.f_evals = report.counters.f_evals;
            row.wall_time = cfg.deterministic_output ? 0.0 : report.wall_time_seconds;
            outputs.summary.push_back(row);

            if (cfg.emit_json)
                write_report_json(
                    (fs::path(cfg.out_dir) / ("report_" + pname + "_" + cfg.solvers[s] + ".json"))
                        .string(),
                    report, mr);
            if (cfg.emit_csv)
                write_front_csv(
                    (fs::path(cfg.out_dir) / ("fronts_" + pname + "_" + cfg.solvers[s] + ".csv"))
                        .string(),
                    cfg.solvers[s], pname, report.pfg);
            outputs.reports.push_back(report);
        }
    }
    if (cfg.emit_csv)
        write_summary_csv((fs::path(cfg.out_dir) / "summary.csv").string(), outputs.summary);
    return outputs;
}

// ---------------------------------------------------------------------------
// cmd_front
// ---------------------------------------------------------------------------

int cmd_front(const std::string& problem, const std::string& solver, int starts,
              std::uint64_t seed, const std::string& out_dir, int jobs, std::ostream& log) {
    ExperimentConfig cfg;
    cfg.problems = {problem};
    cfg.solvers = {solver};
    cfg.starts = starts;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.out_dir = out_dir;
    auto outputs = cmd_run(cfg, log);
    const auto& report = outputs.reports.front();

    fs::create_directories(out_dir);
    const std::string dat = (fs::path(out_dir) / ("scatter_" + problem + "_" + solver + ".dat")).string();
    std::ofstream out(dat);
    out << "# PF (phase-1 anchors, filtered)\n";
    for (const auto& e : report.pf.entries()) {
        for (Eigen::Index j = 0; j < e.f.size(); ++j) out << format_double(e.f[j]) << ' ';
        out << '\n';
    }
    out << "\n\n# PFG (final anchors, filtered)\n";
    for (const auto& e : report.pfg.entries()) {
        for (Eigen::Index j = 0; j < e.f.size(); ++j) out << format_double(e.f[j]) << ' ';
        out << '\n';
    }
    log << "[front] wrote " << dat << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// cmd_profile
// ---------------------------------------------------------------------------

int cmd_profile(const std::vector<std::string>& summary_paths, const std::string& metric,
                const std::string& out_dir, std::ostream& log) {
    if (metric != "hv" && metric != "delta" && metric != "fevals")
        throw ContractError("profile: metric must be hv, delta or fevals");

    std::vector<SummaryRow> rows;
    for (const auto& path : summary_paths)
        for (auto& r : read_summary_csv(path)) rows.push_back(std::move(r));

    std::vector<std::string> solvers;
    std::vector<std::string> problems;
    for (const auto& r : rows) {
        if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end())
            solvers.push_back(r.solver);
        if (std::find(problems.begin(), problems.end(), r.problem) == problems.end())
            problems.push_back(r.problem);
    }
    if (solvers.size() < 2) throw ContractError("profile: need at least two solvers");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto cell = [&](const std::string& s, const std::string& p) -> const SummaryRow* {
        for (const auto& r : rows)
            if (r.solver == s && r.problem == p) return &r;
        return nullptr;
    };
    // keep only problems every solver reports
    std::vector<std::string> shared;
    for (const auto& p : problems) {
        bool all = true;
        for (const auto& s : solvers)
            if (!cell(s, p)) all = false;
        if (all) shared.push_back(p);
    }
    if (shared.empty()) throw ContractError("profile: no problem shared by all solvers");

    std::vector<std::vector<double>> costs(solvers.size(), std::vector<double>(shared.size(), nan));
    for (std::size_t pi = 0; pi < shared.size(); ++pi) {
        double best_hv = 0;
        if (metric == "hv") {
            for (const auto& s : solvers) best_hv = std::max(best_hv, cell(s, shared[pi])->hypervolume);
        }
        for (std::size_t si = 0; si < solvers.size(); ++si) {
            const SummaryRow* r = cell(solvers[si], shared[pi]);
            if (metric == "hv")
                costs[si][pi] = (r->hypervolume > 0 && best_hv > 0) ? best_hv / r->hypervolume : nan;
            else if (metric == "delta")
                costs[si][pi] = r->delta > 0 ? r->delta : nan;
            else
                costs[si][pi] = r->f_evals > 0 ? static_cast<double>(r->f_evals) : nan;
        }
    }

    const auto curves = performance_profile(solvers, costs);
    fs::create_directories(out_dir);
    const std::string csv = (fs::path(out_dir) / ("profile_" + metric + ".csv")).string();
    {
        std::ofstream out(csv);
        out << "solver,tau,rho\n";
        for (const auto& c : curves)
            for (std::size_t i = 0; i < c.tau_grid.size(); ++i)
                out << c.solver << ',' << format_double(c.tau_grid[i]) << ','
                    << format_double(c.values[i]) << '\n';
    }
    const std::string dat = (fs::path(out_dir) / ("profile_" + metric + ".dat")).string();
    {
        std::ofstream out(dat);
        for (const auto& c : curves) {
            out << "# solver: " << c.solver << '\n';
            for (std::size_t i = 0; i < c.tau_grid.size(); ++i)
                out << format_double(c.tau_grid[i]) << ' ' << format_double(c.values[i]) << '\n';
            out << "\n\n";
        }
    }
    log << "[profile] wrote " << csv << " and " << dat << " over " << shared.size()
        << " problems\n";
    return 0;
}

// ---------------------------------------------------------------------------
// cmd_check
// ---------------------------------------------------------------------------

namespace {

struct Checker {
    std::ostream& log;
    int failures = 0;

    void check(bool ok, const std::string& what) {
        log << (ok ? "[PASS] " : "[FAIL] ") << what << '\n';
        if (!ok) ++failures;
    }
};

}  // namespace

int cmd_check(std::ostream& log) {
    Checker c{log};

    // V/A identities
    {
        bool ok = true;
        for (double mu : {0.05, 0.1, 0.3, 0.5, 0.9}) {
            VParams v{mu, 0.5, 1.0};
            ok = ok && std::fabs(v_mu(0.0, v) - mu) < 1e-12 && std::fabs(v_mu(-1.0, v) - 1.0) < 1e-12;
            ok = ok && std::fabs(a_mu_prime(0.0, v) - mu) < 1e-12;
        }
        c.check(ok, "V/A identities: V(0)=mu, V(-tau)=1, A'(0)=mu");
    }
    // dominance sanity
    {
        Vec a(2), b(2), d(2);
        a << 0, 1;
        b << 1, 1;
        d << 1, 0;
        c.check(dominates(a, b) && !dominates(a, d) && !dominates(a, a),
                "dominance: strict/incomparable/irreflexive");
    }
    // filtered archive vs pairwise filter
    {
        Rng rng(17);
        std::vector<Vec> pts;
        for (int i = 0; i < 200; ++i) {
            Vec f(2);
            f << rng.uniform01(), rng.uniform01();
            pts.push_back(f);
        }
        ParetoArchive arch(ArchiveMode::Filtered);
        for (const auto& f : pts) arch.insert(f, f);
        const auto idx = pareto_filter(pts);
        c.check(arch.size() == idx.size(), "archive matches pairwise nondominance filter");
    }
    // Jacobian spot checks
    {
        bool ok = true;
        for (const auto& [name, spec] : registry()) {
            const auto& p = spec.problem;
            Rng rng(5, std::hash<std::string>{}(name));
            for (int t = 0; t < 3 && ok; ++t) {
                Vec z(p.n);
                for (int i = 0; i < p.n; ++i) {
                    const double pad = 0.02 * (p.ub[i] - p.lb[i]);
                    z[i] = rng.uniform(p.lb[i] + pad, p.ub[i] - pad);
                }
                const Mat J = p.jac(z);
                for (int i = 0; i < p.n && ok; ++i) {
                    const double h = 1e-6 * (1.0 + std::fabs(z[i]));
                    Vec zp = z, zm = z;
                    zp[i] += h;
                    zm[i] -= h;
                    const Vec fd = (p.eval(zp) - p.eval(zm)) / (2 * h);
                    for (int j = 0; j < p.m; ++j)
                        if (std::fabs(fd[j] - J(j, i)) / (1.0 + std::fabs(J(j, i))) > 1e-4) ok = false;
                }
            }
            if (!ok) log << "  (Jacobian mismatch on " << name << ")\n";
        }
        c.check(ok, "registered Jacobians match central finite differences");
    }
    // hypervolume hand cases
    {
        Vec p00(2), p12(2), p21(2), ref(2);
        p00 << 0, 0;
        p12 << 1, 2;
        p21 << 2, 1;
        ref << 3, 3;
        Vec ref11(2);
        ref11 << 1, 1;
        const bool ok = std::fabs(hypervolume({p00}, ref11).value - 1.0) < 1e-15 &&
                        std::fabs(hypervolume({p12, p21}, ref).value - 3.0) < 1e-15;
        c.check(ok, "hypervolume: unit square and inclusion-exclusion case");
    }

    log << (c.failures == 0 ? "all checks passed\n" : "checks FAILED\n");
    return c.failures == 0 ? 0 : 2;
}

}  // namespace mogd
