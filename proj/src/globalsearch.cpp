#include "mogd/globalsearch.hpp"

#include <chrono>
#include <cmath>

#include "mogd/init.hpp"
#include "mogd/localsearch.hpp"

namespace mogd {

namespace {

constexpr int kMaxDescentSteps = 500;
constexpr int kMaxLineSearchContractions = 60;
constexpr int kMaxReanchors = 100;
constexpr int kMaxCandidateRedraws = 100;
constexpr double kClipTol = 1e-12;

bool strictly_dominates_all(const Vec& f, const Vec& f_anchor) {
    return (f.array() < f_anchor.array()).all();
}

// grad G_j(z) for every j over cached f(z) and J(z); no problem evaluations.
Mat gdf_grad_rows(const Vec& s_unit, const Vec& dz, const Vec& fz, const Vec& f_anchor,
                  const Mat& Jz, const VParams& v, double rho) {
    Mat G(Jz.rows(), Jz.cols());
    for (Eigen::Index j = 0; j < Jz.rows(); ++j)
        G.row(j) = a_mu_prime(fz[j] - f_anchor[j], v) * Jz.row(j) - rho * s_unit.transpose();
    (void)dz;
    return G;
}

}  // namespace

const char* to_string(DescentOutcome o) {
    switch (o) {
        case DescentOutcome::EscapeFound: return "EscapeFound";
        case DescentOutcome::BoundaryHit: return "BoundaryHit";
        case DescentOutcome::IterationCap: return "IterationCap";
        case DescentOutcome::ParamFloor: return "ParamFloor";
        case DescentOutcome::LineSearchStall: return "LineSearchStall";
    }
    return "?";
}

std::vector<Vec> generate_candidates(const BoxProblem& p, const Vec& anchor, double eps, Rng& rng) {
    if (!(eps > 0)) throw ContractError("generate_candidates: eps must be positive");
    std::vector<Vec> out;
    out.reserve(2 * p.n);
    for (int i = 0; i < p.n; ++i) {
        const double r = std::max(2.0 * eps, 0.05 * (p.ub[i] - p.lb[i]));
        for (double sign : {+1.0, -1.0}) {
            Vec cand = anchor;
            cand[i] += sign * r;
            cand = p.clip(cand);
            int redraws = 0;
            while ((cand - anchor).norm() <= eps && redraws < kMaxCandidateRedraws) {
                cand = rng.uniform_box(p.lb, p.ub);
                ++redraws;
            }
            if ((cand - anchor).norm() > eps) out.push_back(std::move(cand));
            // else: slot dropped
        }
    }
    return out;
}

double update_rho_L(const BoxProblem& p, const Vec& anchor, const Vec& f_anchor, const Vec& z,
                    const Vec& fz, const Mat& Jz, const VParams& v, double rho_U,
                    double nominal_rho_L) {
    const Vec s = z - anchor;
    const double ss = s.squaredNorm();
    if (ss <= 0) throw ContractError("update_rho_L: z equals the anchor");
    const double snorm = std::sqrt(ss);
    double candidate = 0.0;
    for (int j = 0; j < p.m; ++j) {
        if (!(fz[j] < f_anchor[j])) continue;  // I3 only
        const double sg = s.dot(Jz.row(j));
        if (sg <= 0) continue;
        const double C = a_mu_prime(fz[j] - f_anchor[j], v);
        candidate = std::max(candidate, C * sg * snorm / ss);
    }
    if (candidate < rho_U) return std::max(candidate, nominal_rho_L);
    return nominal_rho_L;
}

std::optional<ReducedParams> reduce_params(const BoxProblem& p, const Vec& anchor,
                                           const Vec& f_anchor, const Vec& z, const Vec& fz,
                                           const Mat& Jz, double mu, double rho,
                                           const SolverParams& sp) {
    const Vec s = z - anchor;
    const double dist = s.norm();
    if (!(dist > sp.eps_neighborhood * 0.0) || dist < 1e-12)
        throw ContractError("reduce_params: z too close to the anchor");
    const Vec s_unit = s / dist;

    double mu_cur = mu;
    double rho_cur = rho;
    for (int attempt = 0; attempt <= sp.max_param_reductions; ++attempt) {
        VParams v{mu_cur, sp.c, sp.tau};
        bool ok = true;
        for (int j = 0; j < p.m && ok; ++j) {
            const Vec g = a_mu_prime(fz[j] - f_anchor[j], v) * Jz.row(j).transpose() -
                          rho_cur * s_unit;
            if (!(g.norm() > sp.kappa) || !(s.dot(g) < 0)) ok = false;
        }
        if (ok) return ReducedParams{mu_cur, rho_cur, attempt};
        for (int i = 0; i < sp.l; ++i) {
            mu_cur *= sp.mu_hat;
            rho_cur *= sp.rho_hat;
        }
    }
    return std::nullopt;  // candidate rejected
}

DescentResult gdf_descent(const BoxProblem& p, const Vec& anchor, const Vec& f_anchor, double& mu,
                          double& rho, const Vec& z_start, const Vec& f_start, const Mat& J_start,
                          const SolverParams& sp, EvalCounters* counters) {
    DescentResult res;
    res.z = z_start;
    res.fz = f_start;
    Mat Jz = J_start;
    bool have_jac = true;

    for (int step = 0; step < kMaxDescentSteps; ++step) {
        // (i) escape test: strict componentwise improvement over the anchor
        if (strictly_dominates_all(res.fz, f_anchor)) {
            res.reason = DescentOutcome::EscapeFound;
            return res;
        }
        if (!have_jac) {
            Jz = jac_at(p, res.z, counters);
            have_jac = true;
        }
        // (ii) Phase 2(e) recurs at every iterate
        auto red = reduce_params(p, anchor, f_anchor, res.z, res.fz, Jz, mu, rho, sp);
        if (!red) {
            res.reason = DescentOutcome::ParamFloor;
            return res;
        }
        mu = red->mu;
        rho = red->rho;
        const VParams v{mu, sp.c, sp.tau};

        // (iii) line search along the certified ray direction
        const Vec s = res.z - anchor;
        const double dist = s.norm();
        const Vec D = s / dist;
        const Mat Ggrad = gdf_grad_rows(D, s, res.fz, f_anchor, Jz, v, rho);
        const Vec slopes = Ggrad * D;  // < 0 for every j by the reduce conditions
        Vec Gz(p.m);
        for (int j = 0; j < p.m; ++j) Gz[j] = a_mu(res.fz[j] - f_anchor[j], v) - rho * dist;

        double alpha = sp.alpha_bar_U;
        bool accepted = false;
        Vec zt, ft;
        bool clipped = false;
        for (int k = 0; k <= kMaxLineSearchContractions; ++k, alpha *= sp.r) {
            const Vec raw = res.z + alpha * D;
            zt = p.clip(raw);
            if ((zt - res.z).cwiseAbs().maxCoeff() == 0.0) break;  // pinned on a face
            clipped = ((zt - raw).cwiseAbs().maxCoeff() > kClipTol);
            ft = eval_at(p, zt, counters);
            const double dt = (zt - anchor).norm();
            bool ok = true;
            for (int j = 0; j < p.m; ++j) {
                const double Gt = a_mu(ft[j] - f_anchor[j], v) - rho * dt;
                if (Gt > Gz[j] + sp.beta * alpha * slopes[j]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            res.reason = DescentOutcome::LineSearchStall;
            return res;
        }
        res.z = zt;
        res.fz = ft;
        have_jac = false;
        res.steps = step + 1;
        // (iv) boundary skip
        if (clipped) {
            res.reason = DescentOutcome::BoundaryHit;
            return res;
        }
    }
    res.reason = DescentOutcome::IterationCap;
    return res;
}

MogdmRunResult mogdm_run(const BoxProblem& p, const SolverParams& sp, const Vec& z0,
                         EvalCounters* counters, std::uint64_t stream) {
    MogdmRunResult run;

    auto phase1 = [&](const Vec& from) {
        auto local = local_solve(p, from, -1, 2000, counters);
        run.phase1_iterations += local.iterations;
        run.anchors.push_back(local.x);
        run.f_anchors.push_back(local.fx);
    };
    phase1(z0);

    GlobalPhaseState state;
    state.bounds = estimate_bounds(p, 16, Rng::mix(sp.seed, stream));

    for (int reanchor = 0; reanchor <= kMaxReanchors; ++reanchor) {
        state.anchor = run.anchors.back();
        state.f_anchor = run.f_anchors.back();
        state.mu = sp.mu_ini;
        state.rho = sp.rho_ini;
        state.rho_L = sp.rho_L;

        bool escaped = false;
        Vec escape_point;
        for (std::uint64_t sweep = 0; !escaped; ++sweep) {
            Rng rng(sp.seed, Rng::mix(stream, Rng::mix(run.anchors.size(), sweep)));
            state.candidates = generate_candidates(p, state.anchor, sp.eps_neighborhood, rng);
            if (state.candidates.empty()) {
                run.candidate_exhausted = true;
                return run;
            }
            run.sweeps += 1;
            for (state.candidate_index = 0;
                 state.candidate_index < static_cast<int>(state.candidates.size());
                 ++state.candidate_index) {
                const Vec& cand = state.candidates[state.candidate_index];
                const Vec fc = eval_at(p, cand, counters);
                const Mat Jc = jac_at(p, cand, counters);
                // Phase 2(c)
                state.rho_L = update_rho_L(p, state.anchor, state.f_anchor, cand, fc, Jc,
                                           VParams{state.mu, sp.c, sp.tau}, sp.rho_U, sp.rho_L);
                // Phase 2(d): candidate may already dominate the anchor
                if (strictly_dominates_all(fc, state.f_anchor)) {
                    escaped = true;
                    escape_point = cand;
                    break;
                }
                auto out = gdf_descent(p, state.anchor, state.f_anchor, state.mu, state.rho, cand,
                                       fc, Jc, sp, counters);
                run.phase2_descent_steps += out.steps;
                if (out.reason == DescentOutcome::EscapeFound) {
                    escaped = true;
                    escape_point = out.z;
                    break;
                }
                // BoundaryHit / ParamFloor / IterationCap / LineSearchStall:
                // move on to the next candidate
            }
            if (escaped) break;
            // Phase 2(i)
            state.rho *= sp.rho_hat;
            state.mu = sp.mu_ini;
            if (state.rho < state.rho_L) return run;
        }
        run.escapes += 1;
        phase1(escape_point);
    }
    return run;  // re-anchor safety cap
}

namespace {

RunReport front_common(const BoxProblem& p, const SolverParams& sp, int jobs, bool global_phase) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.problem = p.name;
    report.solver = global_phase ? "mogdm" : "local-only";
    report.seed = sp.seed;

    InitPlan plan = make_init_plan(p, sp, &report.counters, jobs);
    const int N = static_cast<int>(plan.starts.size());

    struct StartResult {
        MogdmRunResult run;
        EvalCounters counters;
    };
    std::vector<StartResult> results(N);
    parallel_for(jobs, N, [&](int i) {
        if (global_phase) {
            results[i].run = mogdm_run(p, sp, plan.starts[i], &results[i].counters,
                                       static_cast<std::uint64_t>(i));
        } else {
            auto local = local_solve(p, plan.starts[i], -1, 2000, &results[i].counters);
            results[i].run.anchors.push_back(local.x);
            results[i].run.f_anchors.push_back(local.fx);
            results[i].run.phase1_iterations = local.iterations;
        }
    });

    for (const auto& r : results) {
        report.counters.merge(r.counters);
        report.phase1_iterations += r.run.phase1_iterations;
        report.phase2_descent_steps += r.run.phase2_descent_steps;
        report.sweeps += r.run.sweeps;
        report.escapes += r.run.escapes;
        for (const auto& a : r.run.anchors) report.local_solutions.push_back(a);
        report.wpf.insert(r.run.anchors.front(), r.run.f_anchors.front());
        report.wpfg.insert(r.run.anchors.back(), r.run.f_anchors.back());
    }
    report.pf = report.wpf.filtered();
    report.pfg = report.wpfg.filtered();
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace

RunReport mogdm_front(const BoxProblem& p, const SolverParams& sp, int jobs) {
    return front_common(p, sp, jobs, true);
}

RunReport local_only_front(const BoxProblem& p, const SolverParams& sp, int jobs) {
    return front_common(p, sp, jobs, false);
}

}  // namespace mogd
