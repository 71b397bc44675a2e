#include "mogd/localsearch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mogd {

namespace {

constexpr double kActiveTol = 1e-10;
constexpr int kMaxBacktracks = 60;

}  // namespace

Vec project_simplex(const Vec& y) {
    // Sort-based projection (Held/Wolfe).
    const Eigen::Index m = y.size();
    std::vector<double> u(y.data(), y.data() + m);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0;
    double theta = 0.0;
    int k = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0) {
            theta = t;
            k = static_cast<int>(i) + 1;
        }
    }
    (void)k;
    Vec out(m);
    for (Eigen::Index i = 0; i < m; ++i) out[i] = std::max(y[i] - theta, 0.0);
    return out;
}

Vec simplex_min_norm(const Mat& gradients) {
    const int m = static_cast<int>(gradients.rows());
    if (m == 1) {
        Vec lambda(1);
        lambda[0] = 1.0;
        return lambda;
    }
    if (m == 2) {
        const Vec g1 = gradients.row(0);
        const Vec g2 = gradients.row(1);
        const Vec diff = g1 - g2;
        const double denom = diff.squaredNorm();
        Vec lambda(2);
        if (denom < 1e-300) {
            lambda << 0.5, 0.5;
            return lambda;
        }
        const double t = std::clamp((g2 - g1).dot(g2) / denom, 0.0, 1.0);
        lambda << t, 1.0 - t;
        return lambda;
    }
    // Projected gradient on the simplex for q(lambda) = 0.5 ||G^T lambda||^2.
    const Mat Q = gradients * gradients.transpose();  // m x m
    Vec lambda = Vec::Constant(m, 1.0 / m);
    double lip = Q.trace();
    if (lip <= 0) return lambda;
    const double step = 1.0 / lip;
    for (int it = 0; it < 20000; ++it) {
        const Vec grad = Q * lambda;
        const Vec next = project_simplex(lambda - step * grad);
        const double move = (next - lambda).norm();
        lambda = next;
        if (move < 1e-12) break;
        // projected-gradient optimality measure
        if ((lambda - project_simplex(lambda - grad)).norm() < 1e-10) break;
    }
    return lambda;
}

DescentStep steepest_direction_from(const Mat& Jz, const Vec& z, const Vec& lb, const Vec& ub) {
    // Min-norm subproblem with bound-blocked coordinates removed, iterated
    // until the direction is feasible.  Restricting the gradients (rather
    // than zeroing d afterwards) keeps the subproblem optimality property
    // g_j . d <= -||d||^2 for every objective, so the vector Armijo rule
    // always has an acceptable step away from reduced-space critical points.
    DescentStep step;
    Mat G = Jz;
    const Eigen::Index n = z.size();
    for (int pass = 0; pass <= n; ++pass) {
        step.lambda = simplex_min_norm(G);
        step.d = -(G.transpose() * step.lambda);
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const bool out = (z[i] - lb[i] < kActiveTol && step.d[i] < 0) ||
                             (ub[i] - z[i] < kActiveTol && step.d[i] > 0);
            if (out && !G.col(i).isZero(0.0)) {
                G.col(i).setZero();
                changed = true;
            }
        }
        if (!changed) break;
    }
    step.theta = -0.5 * step.d.squaredNorm();
    return step;
}

DescentStep steepest_direction(const BoxProblem& p, const Vec& z, EvalCounters* counters) {
    return steepest_direction_from(jac_at(p, z, counters), z, p.lb, p.ub);
}

LineSearchResult armijo_vector_search(const BoxProblem& p, const Vec& z, const Vec& fz,
                                      const Mat& Jz, const DescentStep& step, double beta,
                                      double r, double alpha0, EvalCounters* counters) {
    if (!(step.theta < 0)) throw ContractError("armijo_vector_search: direction is not a descent step");
    if (!(alpha0 > 0)) throw ContractError("armijo_vector_search: alpha0 must be positive");
    const Vec slope = Jz * step.d;  // g_j . d per objective
    LineSearchResult res;
    double alpha = alpha0;
    for (int k = 0; k <= kMaxBacktracks; ++k, alpha *= r) {
        const Vec zt = p.clip(z + alpha * step.d);
        const Vec ft = eval_at(p, zt, counters);
        bool ok = true;
        for (int j = 0; j < p.m; ++j) {
            if (ft[j] > fz[j] + beta * alpha * slope[j]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.z_new = zt;
            res.f_new = ft;
            res.alpha = alpha;
            res.status = LineSearchStatus::Accepted;
            return res;
        }
    }
    res.z_new = z;
    res.f_new = fz;
    res.status = LineSearchStatus::Stalled;
    return res;
}

LocalResult local_solve(const BoxProblem& p, const Vec& z0, double tol, int max_iter,
                        EvalCounters* counters) {
    if (!p.in_box(z0, 1e-12)) throw ContractError("local_solve: start point outside the box");
    if (tol <= 0) tol = 1e-6 * std::sqrt(static_cast<double>(p.n));
    const double step_cap = 0.05 * p.max_range();
    constexpr double beta = 1e-4;
    constexpr double r = 0.5;

    LocalResult res;
    res.x = p.clip(z0);
    res.fx = eval_at(p, res.x, counters);
    for (int it = 0; it < max_iter; ++it) {
        const Mat Jz = jac_at(p, res.x, counters);
        res.step = steepest_direction_from(Jz, res.x, p.lb, p.ub);
        res.iterations = it + 1;
        const double dnorm = res.step.d.norm();
        if (dnorm <= tol) {
            res.converged = true;
            return res;
        }
        // After box projection the direction may stop descending for some
        // objective; such points are treated as critical.
        const Vec slope = Jz * res.step.d;
        if (slope.maxCoeff() >= 0) {
            res.converged = true;
            return res;
        }
        const double alpha0 = std::min(1.0, step_cap / dnorm);
        const auto ls = armijo_vector_search(p, res.x, res.fx, Jz, res.step, beta, r, alpha0, counters);
        if (ls.status == LineSearchStatus::Stalled) {
            res.converged = true;  // stall == numerical criticality
            return res;
        }
        res.x = ls.z_new;
        res.fx = ls.f_new;
    }
    return res;
}

}  // namespace mogd
