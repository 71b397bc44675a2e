#ifndef MOGD_INIT_HPP
#define MOGD_INIT_HPP

#include "mogd/core.hpp"

namespace mogd {

// Phase 0: start generation, spread refinement, payoff-table ideal/nadir
// estimation via the single-objective (m = 1) specialization of the solver.

struct InitPlan {
    std::vector<Vec> starts;
    Vec ideal;
    Vec nadir;
    std::uint64_t seed = 0;
};

/// N uniform samples in the box from the counter-based generator.
std::vector<Vec> sample_starts(const BoxProblem& p, int N, std::uint64_t seed);

/// Greedy max-min selection in objective space normalized by (nadir - ideal),
/// seeded with the per-objective minimizers.  Output size is exactly `keep`.
std::vector<int> spread_filter(const std::vector<Vec>& f_values, const Vec& ideal,
                               const Vec& nadir, int keep);

struct PayoffTable {
    Vec ideal;
    Vec nadir;
    std::vector<Vec> rows;        ///< row j = f(z_j*)
    std::vector<Vec> minimizers;  ///< z_j*
};

/// For each objective j, run the m = 1 global descent from lb, (lb+ub)/2 and
/// ub; row j is the full objective vector at the best of the three.
PayoffTable payoff_table(const BoxProblem& p, const SolverParams& sp,
                         EvalCounters* counters = nullptr, int jobs = 0);

/// Full Phase 0: payoff table, a 2N uniform sample, then the spread filter
/// down to N starts.
InitPlan make_init_plan(const BoxProblem& p, const SolverParams& sp,
                        EvalCounters* counters = nullptr, int jobs = 0, int oversample = 2);

}  // namespace mogd

#endif
