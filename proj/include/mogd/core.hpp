#ifndef MOGD_CORE_HPP
#define MOGD_CORE_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mogd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Caller broke a documented precondition (dimension mismatch, bad range ...).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A registered problem misbehaved (non-finite value/gradient inside its box).
struct ProblemDefinitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gradient of the auxiliary function requested at (or too close to) the anchor.
struct AnchorSingularity : std::logic_error {
    using std::logic_error::logic_error;
};

struct NotFoundError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UndefinedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

/// Counter-based deterministic RNG: a master seed plus a stream id yield an
/// independent, platform-stable sequence.  uniform01 maps the raw 64-bit
/// output directly so results do not depend on libstdc++ distribution
/// internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    double uniform01();
    double uniform(double lo, double hi);
    Vec uniform_box(const Vec& lb, const Vec& ub);

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

  private:
    std::uint64_t state_;
    std::uint64_t next_u64();
};

// ---------------------------------------------------------------------------
// Counters
// ---------------------------------------------------------------------------

struct EvalCounters {
    long long f_evals = 0;
    long long jac_evals = 0;

    void merge(const EvalCounters& other) {
        f_evals += other.f_evals;
        jac_evals += other.jac_evals;
    }
};

// ---------------------------------------------------------------------------
// Problems
// ---------------------------------------------------------------------------

/// A differentiable m-objective problem over the box [lb, ub].
/// eval and jac must be defined for every z in the box; jac returns the
/// m x n matrix whose rows are the objective gradients.
struct BoxProblem {
    std::string name;
    int n = 0;
    int m = 0;
    Vec lb;
    Vec ub;
    std::function<Vec(const Vec&)> eval;
    std::function<Mat(const Vec&)> jac;
    /// Optional sampler of the known analytic Pareto front (metrics only).
    std::function<std::vector<Vec>(int)> front_oracle;

    Vec clip(const Vec& z) const;
    bool in_box(const Vec& z, double tol = 0.0) const;
    double max_range() const;

    /// Throws ContractError unless lb < ub componentwise and dimensions agree.
    void validate() const;
};

/// Counted evaluation helpers; counters may be null.
Vec eval_at(const BoxProblem& p, const Vec& z, EvalCounters* counters);
Mat jac_at(const BoxProblem& p, const Vec& z, EvalCounters* counters);

/// Restriction of `p` to the single objective `j` (m = 1), sharing the box.
BoxProblem single_objective(const BoxProblem& p, int j);

// ---------------------------------------------------------------------------
// Solver parameters
// ---------------------------------------------------------------------------

struct SolverParams {
    double mu_ini = 0.5;
    double rho_ini = 1e-3;
    double rho_L = 1e-5;
    double rho_U = 1e-3;
    double rho_hat = 0.35;
    double mu_hat = 0.1;
    double kappa = 1e-4;
    double eps_neighborhood = 0.1;
    double alpha_bar_U = 0.1;
    double beta = 1e-4;
    double r = 0.5;       // line-search contraction
    double delta = 0.01;
    double tau = 1.0;
    double c = 0.5;
    int l = 1;            // reduction exponent per Phase 2(e) pass
    int n_starts = 200;
    int max_param_reductions = 50;
    std::uint64_t seed = 0;

    /// Defaults: mu_ini = 0.5, delta = 0.01, K = ||ub - lb||,
    /// rho_ini = delta/(K + 1e-3), rho_U = delta/K, rho_L = 1e-5,
    /// rho_hat = 0.35, mu_hat = 0.1, kappa = 1e-4 sqrt(n),
    /// eps = 1 if min range > 10 else 0.1, alpha_bar_U = 0.1.
    static SolverParams defaults_for(const BoxProblem& p);

    void validate() const;
};

// ---------------------------------------------------------------------------
// Dominance and archives
// ---------------------------------------------------------------------------

/// true iff a_i <= b_i for all i and a != b (exact comparisons).
bool dominates(const Vec& a, const Vec& b);

enum class ArchiveMode { Raw, Filtered };

/// Set of (point, objective-vector) pairs.  Raw mode keeps dominated entries
/// (a weak front); filtered mode maintains mutual nondominance.  Both modes
/// drop near-duplicate points (||z1 - z2|| < 1e-10).
class ParetoArchive {
  public:
    struct Entry {
        Vec z;
        Vec f;
    };

    explicit ParetoArchive(ArchiveMode mode = ArchiveMode::Filtered) : mode_(mode) {}

    /// Raw mode appends; filtered mode inserts iff no existing entry
    /// dominates fz and removes entries fz dominates.
    void insert(const Vec& z, const Vec& fz);

    ArchiveMode mode() const { return mode_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }

    std::vector<Vec> objective_vectors() const;

    /// Nondominated filtering of this archive into a new filtered archive.
    ParetoArchive filtered() const;

  private:
    ArchiveMode mode_;
    std::vector<Entry> entries_;

    static constexpr double kDedupTol = 1e-10;
    bool is_duplicate(const Vec& z) const;
};

// ---------------------------------------------------------------------------
// Bounds estimation
// ---------------------------------------------------------------------------

/// K: exact box diameter ||ub - lb||; M: sampled gradient-norm bound
/// (inflated by 1.2, floored at 1e-8); L: Lipschitz estimate (= M).
struct BoundsInfo {
    double K = 0;
    double M = 0;
    double L = 0;
};

BoundsInfo estimate_bounds(const BoxProblem& p, int sample_count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Run reports
// ---------------------------------------------------------------------------

struct RunReport {
    std::string problem;
    std::string solver;
    std::uint64_t seed = 0;
    EvalCounters counters;
    std::vector<Vec> local_solutions;
    ParetoArchive wpf{ArchiveMode::Raw};
    ParetoArchive wpfg{ArchiveMode::Raw};
    ParetoArchive pf{ArchiveMode::Filtered};
    ParetoArchive pfg{ArchiveMode::Filtered};
    double wall_time_seconds = 0;
    long long phase1_iterations = 0;
    long long phase2_descent_steps = 0;
    long long escapes = 0;
    long long sweeps = 0;
};

// ---------------------------------------------------------------------------
// Worker pool
// ---------------------------------------------------------------------------

/// Runs fn(i) for i in [0, count) on at most `jobs` threads (0 = hardware
/// concurrency).  Tasks must not touch shared mutable state; results should
/// be written into per-index slots so merges stay deterministic.
void parallel_for(int jobs, int count, const std::function<void(int)>& fn);

}  // namespace mogd

#endif
