#include "mogd/gdf.hpp"

#include <cmath>

namespace mogd {

namespace {

constexpr double kAnchorTol = 1e-12;
constexpr double kExpClamp = 700.0;  // exp() overflows just above 709

// b^(y/tau) in the log domain; the clamp keeps far-from-anchor evaluations
// finite (y can be as large as the objective range).
double pow_base(double y, const VParams& p) {
    const double e = std::clamp((y / p.tau) * std::log(p.base()), -kExpClamp, kExpClamp);
    return std::exp(e);
}

}  // namespace

void VParams::validate() const {
    if (!(mu > 0.0 && mu < 1.0)) throw ContractError("VParams: mu must be in (0,1)");
    if (!(c > 0.0 && c < 1.0)) throw ContractError("VParams: c must be in (0,1)");
    if (!(tau > 0.0)) throw ContractError("VParams: tau must be positive");
}

double VParams::c_prime() const {
    return (1.0 - c) * std::fabs(std::log(base())) / tau;
}

double v_mu(double y, const VParams& p) {
    return p.mu * ((1.0 - p.c) * pow_base(y, p) + p.c);
}

double v_mu_prime(double y, const VParams& p) {
    return p.mu * (1.0 - p.c) * (std::log(p.base()) / p.tau) * pow_base(y, p);
}

double a_mu(double y, const VParams& p) {
    return y * v_mu(y, p);
}

double a_mu_prime(double y, const VParams& p) {
    return v_mu(y, p) + y * v_mu_prime(y, p);
}

GdfContext GdfContext::at(const BoxProblem& p, const Vec& anchor, const VParams& v, double rho,
                          EvalCounters* counters) {
    v.validate();
    if (rho <= 0) throw ContractError("GdfContext: rho must be positive");
    GdfContext ctx;
    ctx.problem = &p;
    ctx.anchor = anchor;
    ctx.f_anchor = eval_at(p, anchor, counters);
    ctx.v = v;
    ctx.rho = rho;
    ctx.counters = counters;
    return ctx;
}

double gdf_value(const GdfContext& ctx, int j, const Vec& z) {
    const Vec fz = eval_at(*ctx.problem, z, ctx.counters);
    return a_mu(fz[j] - ctx.f_anchor[j], ctx.v) - ctx.rho * (z - ctx.anchor).norm();
}

Vec gdf_grad(const GdfContext& ctx, int j, const Vec& z) {
    const Vec s = z - ctx.anchor;
    const double dist = s.norm();
    if (dist < kAnchorTol) throw AnchorSingularity("gdf_grad: z coincides with the anchor");
    const Vec fz = eval_at(*ctx.problem, z, ctx.counters);
    const Mat Jz = jac_at(*ctx.problem, z, ctx.counters);
    return a_mu_prime(fz[j] - ctx.f_anchor[j], ctx.v) * Jz.row(j).transpose() - (ctx.rho / dist) * s;
}

Vec gdf_values_from(const GdfContext& ctx, const Vec& z, const Vec& fz) {
    const double dist = (z - ctx.anchor).norm();
    Vec g(ctx.problem->m);
    for (int j = 0; j < ctx.problem->m; ++j)
        g[j] = a_mu(fz[j] - ctx.f_anchor[j], ctx.v) - ctx.rho * dist;
    return g;
}

Mat gdf_grads_from(const GdfContext& ctx, const Vec& z, const Vec& fz, const Mat& Jz) {
    const Vec s = z - ctx.anchor;
    const double dist = s.norm();
    if (dist < kAnchorTol) throw AnchorSingularity("gdf_grads_from: z coincides with the anchor");
    Mat G(ctx.problem->m, ctx.problem->n);
    const Vec unit = s / dist;
    for (int j = 0; j < ctx.problem->m; ++j) {
        G.row(j) = a_mu_prime(fz[j] - ctx.f_anchor[j], ctx.v) * Jz.row(j) -
                   ctx.rho * unit.transpose();
    }
    return G;
}

bool in_basin_complement_f(const GdfContext& ctx, const Vec& z, const Vec& fz) {
    if ((z - ctx.anchor).norm() < kAnchorTol) return false;
    return !((fz.array() < ctx.f_anchor.array()).all());
}

bool in_basin_complement(const GdfContext& ctx, const Vec& z) {
    return in_basin_complement_f(ctx, z, eval_at(*ctx.problem, z, ctx.counters));
}

}  // namespace mogd
