#ifndef MOGD_GDF_HPP
#define MOGD_GDF_HPP

#include "mogd/core.hpp"

namespace mogd {

// Two-parameter auxiliary function family used to escape a known local weak
// efficient solution x-dagger:
//
//   G_j(z) = A_mu(f_j(z) - f_j(x+)) - rho * ||z - x+||,
//   A_mu(y) = y * V_mu(y),
//   V_mu(y) = mu * [(1-c) * b^(y/tau) + c],   b = mu(1-c)/(1-c mu).
//
// V satisfies V(-tau) = 1, V(0) = mu, V >= c*mu (asymptotically), V' < 0.

/// Kernel parameters.  Admissible when mu, c in (0,1) and tau > 0; then
/// the base b = mu(1-c)/(1-c mu) lies in (0,1).
struct VParams {
    double mu = 0.5;
    double c = 0.5;
    double tau = 1.0;

    double base() const { return mu * (1.0 - c) / (1.0 - c * mu); }
    /// Derived bound constant c' = (1-c)|ln b|/tau (tests only).
    double c_prime() const;
    void validate() const;
};

double v_mu(double y, const VParams& p);
double v_mu_prime(double y, const VParams& p);
double a_mu(double y, const VParams& p);
double a_mu_prime(double y, const VParams& p);

/// Frozen anchor plus (mu, rho, tau, c).  Immutable; all operations pure.
struct GdfContext {
    const BoxProblem* problem = nullptr;
    Vec anchor;
    Vec f_anchor;
    VParams v;
    double rho = 0;
    EvalCounters* counters = nullptr;  // optional

    static GdfContext at(const BoxProblem& p, const Vec& anchor, const VParams& v, double rho,
                         EvalCounters* counters = nullptr);
};

/// G_j(z); evaluates f(z).
double gdf_value(const GdfContext& ctx, int j, const Vec& z);

/// Gradient of G_j at z; evaluates f(z) and the j-th gradient.
/// Throws AnchorSingularity when ||z - anchor|| < 1e-12.
Vec gdf_grad(const GdfContext& ctx, int j, const Vec& z);

// Batch forms over precomputed f(z) / Jacobian(z); used by the solver loop so
// each iterate costs one eval and one jac.
Vec gdf_values_from(const GdfContext& ctx, const Vec& z, const Vec& fz);
Mat gdf_grads_from(const GdfContext& ctx, const Vec& z, const Vec& fz, const Mat& Jz);

/// z lies in the basin complement X^(x+): z != anchor and f_j(z) >= f_j(anchor)
/// for at least one j.
bool in_basin_complement(const GdfContext& ctx, const Vec& z);
bool in_basin_complement_f(const GdfContext& ctx, const Vec& z, const Vec& fz);

}  // namespace mogd

#endif
