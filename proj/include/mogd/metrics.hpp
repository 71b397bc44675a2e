#ifndef MOGD_METRICS_HPP
#define MOGD_METRICS_HPP

#include <string>
#include <vector>

#include "mogd/core.hpp"

namespace mogd {

/// Indices of the nondominated points (order of first appearance preserved).
std::vector<int> pareto_filter(const std::vector<Vec>& points);

struct HypervolumeResult {
    double value = 0;
    int n_discarded = 0;  ///< points not strictly below the reference
};

/// Exact hypervolume for m = 2 (rectangle sweep) and m = 3 (slicing).
/// Points with any coordinate >= ref are discarded and counted.
/// Throws UnsupportedError for m > 3.
HypervolumeResult hypervolume(const std::vector<Vec>& front, const Vec& ref);

/// Delta-spread of a bi-objective front:
///   (d_f + d_l + sum |d_i - dbar|) / (d_f + d_l + (N-1) dbar)
/// with consecutive Euclidean gaps d_i after sorting by f1, and d_f/d_l the
/// distances from `extremes` to the sorted front's endpoints.  N = 1 gives 1.
/// Throws UndefinedError on an empty front.
double delta_spread(const std::vector<Vec>& front, const std::pair<Vec, Vec>& extremes);

/// m = 3 substitute for the spread indicator: mean absolute deviation of
/// nearest-neighbor gaps over the mean gap (0 for perfectly even spacing).
double nn_gap_deviation(const std::vector<Vec>& front);

struct MetricReport {
    double hypervolume = 0;
    Vec reference;
    double delta_spread = 0;
    std::string delta_kind;  // "delta2" or "nn-gap-dev"
    int n_nondominated = 0;
    long long f_evals = 0;
};

/// Shared reference point: ref = fN + 0.1 (fN - fI) over the union of the
/// compared fronts (componentwise nadir/ideal of the union).
Vec shared_reference(const std::vector<std::vector<Vec>>& fronts);

struct ProfileCurve {
    std::string solver;
    std::vector<double> ratios;     ///< sorted performance ratios (inf = failure)
    std::vector<double> tau_grid;   ///< evaluation grid, tau >= 1
    std::vector<double> values;     ///< rho_s(tau), nondecreasing in [0,1]
};

/// Dolan-More profiles.  cost(p, s) > 0, NaN/inf marks a failure; problems
/// where every solver fails are excluded.  For benefit metrics (hypervolume)
/// callers pass cost = best/value so larger benefit maps to smaller cost.
std::vector<ProfileCurve> performance_profile(const std::vector<std::string>& solvers,
                                              const std::vector<std::vector<double>>& costs,
                                              int grid_points = 256);

}  // namespace mogd

#endif
