#ifndef MOGD_LOCALSEARCH_HPP
#define MOGD_LOCALSEARCH_HPP

#include "mogd/core.hpp"

namespace mogd {

// Phase 1: multiobjective projected steepest descent with a vector Armijo
// backtracking rule.  The descent direction is the min-norm element of
// -conv{grad f_j(z)}; it vanishes exactly at Fritz John points.

struct DescentStep {
    Vec d;       ///< descent direction (box-projected)
    Vec lambda;  ///< simplex multipliers of the subproblem solution
    double theta = 0;  ///< optimality gap, -0.5 ||d||^2
};

/// min over the simplex of 0.5 ||G^T lambda||^2 where rows of G are the
/// gradients.  m = 1 trivial, m = 2 closed form, m >= 3 projected gradient
/// to tolerance 1e-10.
Vec simplex_min_norm(const Mat& gradients);

/// Euclidean projection onto the probability simplex.
Vec project_simplex(const Vec& y);

/// Steepest-descent step at z: solve the simplex subproblem on the Jacobian
/// rows, set d = -sum lambda_j g_j, then zero components of d pointing out of
/// an active bound (|z_i - bound| < 1e-10).
DescentStep steepest_direction(const BoxProblem& p, const Vec& z,
                               EvalCounters* counters = nullptr);
DescentStep steepest_direction_from(const Mat& Jz, const Vec& z, const Vec& lb, const Vec& ub);

enum class LineSearchStatus { Accepted, Stalled };

struct LineSearchResult {
    Vec z_new;
    Vec f_new;
    double alpha = 0;
    LineSearchStatus status = LineSearchStatus::Stalled;
};

/// Largest alpha in {alpha0 * r^k} whose (box-clipped) trial point satisfies
/// f_j(z') <= f_j(z) + beta * alpha * (g_j . d) for all j.  Stalls after 60
/// contractions; callers treat a stall as criticality.
LineSearchResult armijo_vector_search(const BoxProblem& p, const Vec& z, const Vec& fz,
                                      const Mat& Jz, const DescentStep& step, double beta,
                                      double r, double alpha0, EvalCounters* counters = nullptr);

struct LocalResult {
    Vec x;
    Vec fx;
    DescentStep step;
    int iterations = 0;
    bool converged = false;
};

/// Phase 1 driver: iterate steepest_direction + armijo_vector_search until
/// ||d|| <= tol (default 1e-6 sqrt(n)) or max_iter (default 2000).
/// Initial trial steps are capped at 5% of the largest box range so the
/// search stays local; the cap relaxes to a full step as ||d|| shrinks.
LocalResult local_solve(const BoxProblem& p, const Vec& z0, double tol = -1, int max_iter = 2000,
                        EvalCounters* counters = nullptr);

}  // namespace mogd

#endif
