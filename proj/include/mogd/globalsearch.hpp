#ifndef MOGD_GLOBALSEARCH_HPP
#define MOGD_GLOBALSEARCH_HPP

#include <optional>

#include "mogd/core.hpp"
#include "mogd/gdf.hpp"

namespace mogd {

// Phase 2: escape from the current anchor by descending the auxiliary
// functions G_j from candidate points outside a deleted-eps neighborhood,
// re-entering Phase 1 whenever a point strictly dominating the anchor is
// found.

struct GlobalPhaseState {
    Vec anchor;
    Vec f_anchor;
    double mu = 0;
    double rho = 0;
    double rho_L = 0;
    int candidate_index = 0;
    std::vector<Vec> candidates;
    int reduction_count = 0;
    BoundsInfo bounds;
};

/// Up to 2n candidates: x+ +- r_i e_i with r_i = max(2 eps, 0.05 range_i),
/// clipped to the box; slots inside the eps-ball are replaced by uniform
/// redraws (<= 100 tries each, then dropped).  An empty result means the
/// box cannot accommodate the deleted neighborhood (candidate exhaustion).
std::vector<Vec> generate_candidates(const BoxProblem& p, const Vec& anchor, double eps, Rng& rng);

/// rho_L update reconstructed from the descent-direction bound: over the
/// improving objectives I3 = {j : f_j(z) < f_j(x+)} with positive slope
/// s.grad f_j, the largest A'_mu(df_j) (s.grad f_j) ||s|| / (s.s); reset to
/// the nominal floor when no term applies or the value reaches rho_U.
double update_rho_L(const BoxProblem& p, const Vec& anchor, const Vec& f_anchor, const Vec& z,
                    const Vec& fz, const Mat& Jz, const VParams& v, double rho_U,
                    double nominal_rho_L);

struct ReducedParams {
    double mu = 0;
    double rho = 0;
    int reductions = 0;
};

/// Phase 2(e): shrink (mu, rho) by (mu_hat^l, rho_hat^l) until for every j
/// ||grad G_j(z)|| > kappa and (z - x+)^T grad G_j(z) < 0; nullopt after
/// max_param_reductions attempts (candidate rejected).
std::optional<ReducedParams> reduce_params(const BoxProblem& p, const Vec& anchor,
                                           const Vec& f_anchor, const Vec& z, const Vec& fz,
                                           const Mat& Jz, double mu, double rho,
                                           const SolverParams& sp);

enum class DescentOutcome {
    EscapeFound,   ///< f(z) < f(x+) componentwise; re-enter Phase 1 from z
    BoundaryHit,   ///< accepted step was clipped by the box
    IterationCap,  ///< 500 steps without escape or boundary
    ParamFloor,    ///< reduce_params rejected the point
    LineSearchStall
};

const char* to_string(DescentOutcome o);

struct DescentResult {
    Vec z;
    Vec fz;
    DescentOutcome reason = DescentOutcome::IterationCap;
    int steps = 0;
};

/// Descend the vector auxiliary function from an accepted candidate along
/// D = (z - x+)/||z - x+||, with a backtracking line search requiring the
/// Armijo inequality for every G_j simultaneously.  mu/rho are committed
/// in place as the recurring Phase 2(e) loop shrinks them.
DescentResult gdf_descent(const BoxProblem& p, const Vec& anchor, const Vec& f_anchor, double& mu,
                          double& rho, const Vec& z_start, const Vec& f_start, const Mat& J_start,
                          const SolverParams& sp, EvalCounters* counters);

struct MogdmRunResult {
    std::vector<Vec> anchors;    ///< Phase-1 outputs in visit order
    std::vector<Vec> f_anchors;  ///< strictly componentwise decreasing
    long long phase1_iterations = 0;
    long long phase2_descent_steps = 0;
    long long sweeps = 0;
    long long escapes = 0;
    bool candidate_exhausted = false;

    const Vec& final_anchor() const { return anchors.back(); }
    const Vec& final_f() const { return f_anchors.back(); }
};

/// One full MOGDM run from a single start: Phase 1, then candidate sweeps
/// with geometric rho reduction until rho < rho_L, re-anchoring on every
/// escape (fresh mu_ini/rho_ini at the new anchor).  Hard cap of 100
/// re-anchorings.
MogdmRunResult mogdm_run(const BoxProblem& p, const SolverParams& sp, const Vec& z0,
                         EvalCounters* counters = nullptr, std::uint64_t stream = 0);

/// N-start front construction (Phase 0 via the init module): WPF collects the
/// Phase-1-only anchor per start, WPFG the final anchor; PF/PFG are their
/// nondominated filterings.
RunReport mogdm_front(const BoxProblem& p, const SolverParams& sp, int jobs = 0);

/// Baseline: Phase 1 only from the same Phase-0 starts.
RunReport local_only_front(const BoxProblem& p, const SolverParams& sp, int jobs = 0);

}  // namespace mogd

#endif
