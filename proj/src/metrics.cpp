#include "mogd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mogd {

std::vector<int> pareto_filter(const std::vector<Vec>& points) {
    // incremental archive sweep; the tests cross-check against a plain
    // pairwise filter
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        bool dominated = false;
        for (int k : keep) {
            if (dominates(points[k], points[i])) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        std::erase_if(keep, [&](int k) { return dominates(points[i], points[k]); });
        keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

namespace {

double hv2(std::vector<Vec> pts, double ref1, double ref2) {
    // rectangle sweep over points strictly inside the reference corner
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    double hv = 0;
    double prev_f2 = ref2;
    for (const auto& p : pts) {
        if (p[1] < prev_f2) {
            hv += (ref1 - p[0]) * (prev_f2 - p[1]);
            prev_f2 = p[1];
        }
    }
    return hv;
}

}  // namespace

HypervolumeResult hypervolume(const std::vector<Vec>& front, const Vec& ref) {
    const int m = static_cast<int>(ref.size());
    if (m != 2 && m != 3) throw UnsupportedError("hypervolume: only m in {2,3} supported");
    HypervolumeResult res;
    std::vector<Vec> pts;
    for (const auto& p : front) {
        if (p.size() != ref.size()) throw ContractError("hypervolume: dimension mismatch");
        if ((p.array() < ref.array()).all())
            pts.push_back(p);
        else
            ++res.n_discarded;
    }
    if (pts.empty()) return res;
    if (m == 2) {
        res.value = hv2(std::move(pts), ref[0], ref[1]);
        return res;
    }
    // m = 3: slice along f3.  Between consecutive f3 levels the dominated
    // region's cross-section is the 2-D union over points at or below the
    // slab's lower level.
    std::vector<double> levels;
    for (const auto& p : pts) levels.push_back(p[2]);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    levels.push_back(ref[2]);
    double hv = 0;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        const double z0 = levels[k];
        const double z1 = levels[k + 1];
        std::vector<Vec> slice;
        for (const auto& p : pts) {
            if (p[2] <= z0) {
                Vec q(2);
                q << p[0], p[1];
                slice.push_back(q);
            }
        }
        hv += hv2(std::move(slice), ref[0], ref[1]) * (z1 - z0);
    }
    res.value = hv;
    return res;
}

double delta_spread(const std::vector<Vec>& front, const std::pair<Vec, Vec>& extremes) {
    if (front.empty()) throw UndefinedError("delta_spread: empty front");
    if (front[0].size() != 2) throw UnsupportedError("delta_spread: bi-objective fronts only");
    const int N = static_cast<int>(front.size());
    if (N == 1) return 1.0;
    std::vector<Vec> pts = front;
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    // pair each given extreme with the closer endpoint
    const double d_first_a = (pts.front() - extremes.first).norm();
    const double d_first_b = (pts.front() - extremes.second).norm();
    double d_f, d_l;
    if (d_first_a <= d_first_b) {
        d_f = d_first_a;
        d_l = (pts.back() - extremes.second).norm();
    } else {
        d_f = d_first_b;
        d_l = (pts.back() - extremes.first).norm();
    }
    std::vector<double> gaps;
    for (int i = 0; i + 1 < N; ++i) gaps.push_back((pts[i + 1] - pts[i]).norm());
    double dbar = 0;
    for (double d : gaps) dbar += d;
    dbar /= gaps.size();
    double dev = 0;
    for (double d : gaps) dev += std::fabs(d - dbar);
    const double denom = d_f + d_l + (N - 1) * dbar;
    if (denom <= 0) return 0.0;  // single repeated point with matching extremes
    return (d_f + d_l + dev) / denom;
}

double nn_gap_deviation(const std::vector<Vec>& front) {
    if (front.empty()) throw UndefinedError("nn_gap_deviation: empty front");
    const int N = static_cast<int>(front.size());
    if (N == 1) return 1.0;
    std::vector<double> nn(N, std::numeric_limits<double>::infinity());
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (i != j) nn[i] = std::min(nn[i], (front[i] - front[j]).norm());
    double mean = 0;
    for (double d : nn) mean += d;
    mean /= N;
    if (mean <= 0) return 0.0;
    double dev = 0;
    for (double d : nn) dev += std::fabs(d - mean);
    return dev / (N * mean);
}

Vec shared_reference(const std::vector<std::vector<Vec>>& fronts) {
    Vec ideal, nadir;
    bool first = true;
    for (const auto& front : fronts) {
        for (const auto& p : front) {
            if (first) {
                ideal = p;
                nadir = p;
                first = false;
            } else {
                ideal = ideal.cwiseMin(p);
                nadir = nadir.cwiseMax(p);
            }
        }
    }
    if (first) throw UndefinedError("shared_reference: no points");
    return nadir + 0.1 * (nadir - ideal);
}

std::vector<ProfileCurve> performance_profile(const std::vector<std::string>& solvers,
                                              const std::vector<std::vector<double>>& costs,
                                              int grid_points) {
    const int S = static_cast<int>(solvers.size());
    if (S == 0 || costs.size() != static_cast<std::size_t>(S))
        throw ContractError("performance_profile: solver/cost shape mismatch");
    const std::size_t P = costs[0].size();
    for (const auto& row : costs)
        if (row.size() != P) throw ContractError("performance_profile: ragged cost matrix");

    const double inf = std::numeric_limits<double>::infinity();
    auto failed = [](double c) { return !(std::isfinite(c) && c > 0); };

    // per-problem ratios; problems where every solver fails are dropped
    std::vector<std::vector<double>> ratios(S);
    for (std::size_t p = 0; p < P; ++p) {
        double best = inf;
        for (int s = 0; s < S; ++s)
            if (!failed(costs[s][p])) best = std::min(best, costs[s][p]);
        if (!std::isfinite(best)) continue;
        for (int s = 0; s < S; ++s)
            ratios[s].push_back(failed(costs[s][p]) ? inf : costs[s][p] / best);
    }
    if (ratios[0].empty()) throw ContractError("performance_profile: all problems failed");

    double tau_max = 1.0;
    for (const auto& rs : ratios)
        for (double r : rs)
            if (std::isfinite(r)) tau_max = std::max(tau_max, r);
    tau_max *= 1.05;

    std::vector<ProfileCurve> curves;
    const std::size_t used = ratios[0].size();
    for (int s = 0; s < S; ++s) {
        ProfileCurve c;
        c.solver = solvers[s];
        c.ratios = ratios[s];
        std::sort(c.ratios.begin(), c.ratios.end());
        c.tau_grid.reserve(grid_points);
        c.values.reserve(grid_points);
        for (int g = 0; g < grid_points; ++g) {
            const double tau = 1.0 + (tau_max - 1.0) * g / (grid_points - 1);
            std::size_t cnt = 0;
            while (cnt < c.ratios.size() && c.ratios[cnt] <= tau) ++cnt;
            c.tau_grid.push_back(tau);
            c.values.push_back(static_cast<double>(cnt) / static_cast<double>(used));
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

}  // namespace mogd
