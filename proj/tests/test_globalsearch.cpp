#include <doctest.h>

#include <cmath>

#include "mogd/globalsearch.hpp"
#include "mogd/metrics.hpp"
#include "mogd/problems.hpp"

using namespace mogd;

namespace {

BoxProblem convex_pair(int n) {
    BoxProblem p;
    p.name = "convexpair";
    p.n = n;
    p.m = 2;
    p.lb = Vec::Constant(n, -2.0);
    p.ub = Vec::Constant(n, 2.0);
    p.eval = [](const Vec& z) {
        Vec f(2);
        f << z.squaredNorm(), (z.array() - 1).matrix().squaredNorm();
        return f;
    };
    p.jac = [n](const Vec& z) {
        Mat J(2, n);
        J.row(0) = 2 * z;
        J.row(1) = 2 * (z.array() - 1);
        return J;
    };
    return p;
}

BoxProblem quadratic_pair_1d() {
    BoxProblem p;
    p.name = "qpair1d";
    p.n = 1;
    p.m = 2;
    p.lb = Vec::Constant(1, -4.0);
    p.ub = Vec::Constant(1, 4.0);
    p.eval = [](const Vec& z) {
        Vec f(2);
        f << z[0] * z[0], (z[0] - 1) * (z[0] - 1);
        return f;
    };
    p.jac = [](const Vec& z) {
        Mat J(2, 1);
        J << 2 * z[0], 2 * (z[0] - 1);
        return J;
    };
    return p;
}

}  // namespace

TEST_CASE("generate_candidates") {
    BoxProblem p = convex_pair(2);
    p.lb = Vec::Constant(2, -1.0);
    p.ub = Vec::Constant(2, 1.0);
    Rng rng(5);

    SUBCASE("axis pattern at the center") {
        const Vec anchor = Vec::Zero(2);
        auto cands = generate_candidates(p, anchor, 0.1, rng);
        REQUIRE(cands.size() == 4);
        // r_i = max(0.2, 0.05 * 2) = 0.2
        CHECK(cands[0] == Vec(Vec::Zero(2) + 0.2 * Vec::Unit(2, 0)));
        CHECK(cands[1] == Vec(Vec::Zero(2) - 0.2 * Vec::Unit(2, 0)));
        CHECK(cands[2] == Vec(Vec::Zero(2) + 0.2 * Vec::Unit(2, 1)));
        CHECK(cands[3] == Vec(Vec::Zero(2) - 0.2 * Vec::Unit(2, 1)));
        for (const auto& c : cands) {
            CHECK((c - anchor).norm() > 0.1);
            CHECK(p.in_box(c));
        }
    }
    SUBCASE("clipped slots get replaced by redraws outside the ball") {
        Vec anchor(2);
        anchor << 0.95, 0.0;  // +e1 candidate clips to the face, 0.05 from anchor
        auto cands = generate_candidates(p, anchor, 0.1, rng);
        REQUIRE(cands.size() == 4);
        for (const auto& c : cands) {
            CHECK((c - anchor).norm() > 0.1);
            CHECK(p.in_box(c));
        }
    }
    SUBCASE("eps larger than the box kills every slot") {
        const Vec anchor = Vec::Zero(2);
        auto cands = generate_candidates(p, anchor, 10.0, rng);
        CHECK(cands.empty());  // candidate exhaustion
    }
}

TEST_CASE("update_rho_L") {
    BoxProblem p = quadratic_pair_1d();
    const VParams v{0.5, 0.5, 1.0};
    const double rho_U = 0.005;
    const double nominal = 1e-5;

    SUBCASE("I3 empty resets to nominal") {
        Vec anchor = Vec::Constant(1, 0.5);  // efficient point
        const Vec fa = p.eval(anchor);
        Vec z = Vec::Constant(1, 2.0);  // both objectives worse
        CHECK(update_rho_L(p, anchor, fa, z, p.eval(z), p.jac(z), v, rho_U, nominal) == nominal);
    }
    SUBCASE("negative slopes on I3 reset to nominal") {
        // anchor 0, z = 0.5: I3 = {2}, s grad f2 = 0.5 * (-1) < 0
        Vec anchor = Vec::Zero(1);
        const Vec fa = p.eval(anchor);
        Vec z = Vec::Constant(1, 0.5);
        CHECK(update_rho_L(p, anchor, fa, z, p.eval(z), p.jac(z), v, rho_U, nominal) == nominal);
    }
    SUBCASE("positive improving slope produces the theorem bound") {
        // anchor 0, z = 1.5: f2(1.5) = 0.25 < 1 = f2(0), s grad f2 = 1.5 > 0
        Vec anchor = Vec::Zero(1);
        const Vec fa = p.eval(anchor);
        Vec z = Vec::Constant(1, 1.5);
        const Vec fz = p.eval(z);
        const Mat Jz = p.jac(z);
        const double expected = a_mu_prime(fz[1] - fa[1], v) * (1.5 * 1.0) * 1.5 / (1.5 * 1.5);
        const double got = update_rho_L(p, anchor, fa, z, fz, Jz, v, 1e9, nominal);
        CHECK(got == doctest::Approx(expected));
        // with a small rho_U the bound is discarded
        CHECK(update_rho_L(p, anchor, fa, z, fz, Jz, v, expected * 0.5, nominal) == nominal);
    }
}

TEST_CASE("reduce_params") {
    SolverParams sp;
    sp.kappa = 1e-4;
    sp.rho_U = 1e-3;

    SUBCASE("constant objectives succeed iff rho > kappa") {
        BoxProblem p = quadratic_pair_1d();
        p.eval = [](const Vec&) { return Vec::Constant(2, 1.0); };
        p.jac = [](const Vec&) { return Mat::Zero(2, 1); };
        Vec anchor = Vec::Zero(1);
        Vec z = Vec::Constant(1, 1.0);
        const Vec fa = p.eval(anchor);
        const Vec fz = p.eval(z);
        const Mat Jz = p.jac(z);
        // grad G_j = -rho s^; norm rho, slope -rho: holds immediately for rho > kappa
        auto ok = reduce_params(p, anchor, fa, z, fz, Jz, 0.5, 0.01, sp);
        REQUIRE(ok.has_value());
        CHECK(ok->reductions == 0);
        CHECK(ok->mu == 0.5);
        CHECK(ok->rho == 0.01);
        // rho below kappa can never recover (reductions shrink it further)
        auto bad = reduce_params(p, anchor, fa, z, fz, Jz, 0.5, 5e-5, sp);
        CHECK_FALSE(bad.has_value());
    }
    SUBCASE("climbing slope forces mu reductions") {
        BoxProblem p = quadratic_pair_1d();
        Vec anchor = Vec::Constant(1, 0.5);
        Vec z = Vec::Constant(1, 0.55);  // moving away raises f1 gently
        const Vec fa = p.eval(anchor);
        const Vec fz = p.eval(z);
        const Mat Jz = p.jac(z);
        auto ok = reduce_params(p, anchor, fa, z, fz, Jz, 0.5, 0.1, sp);
        REQUIRE(ok.has_value());
        CHECK(ok->reductions > 0);
        CHECK(ok->mu < 0.5);
        // verify the committed parameters really satisfy both conditions
        const VParams v{ok->mu, sp.c, sp.tau};
        const Vec s = z - anchor;
        for (int j = 0; j < 2; ++j) {
            const Vec g =
                a_mu_prime(fz[j] - fa[j], v) * Jz.row(j).transpose() - ok->rho * s / s.norm();
            CHECK(g.norm() > sp.kappa);
            CHECK(s.dot(g) < 0);
        }
    }
    SUBCASE("unreachable conditions reject at the cap") {
        BoxProblem p = quadratic_pair_1d();
        Vec anchor = Vec::Constant(1, 0.5);
        Vec z = Vec::Constant(1, 1.5);
        const Vec fa = p.eval(anchor);
        const Vec fz = p.eval(z);
        const Mat Jz = p.jac(z);
        SolverParams tight = sp;
        tight.kappa = 10.0;  // no (mu, rho) can push ||grad G|| above 10 here
        CHECK_FALSE(reduce_params(p, anchor, fa, z, fz, Jz, 0.5, 0.01, tight).has_value());
    }
}

TEST_CASE("gdf_descent") {
    SUBCASE("entry check: strictly better candidate escapes immediately") {
        BoxProblem p = quadratic_pair_1d();
        Vec anchor = Vec::Constant(1, 3.0);  // not efficient; f = (9, 4)
        const Vec fa = p.eval(anchor);
        Vec z = Vec::Constant(1, 0.5);  // f = (0.25, 0.25) strictly better
        SolverParams sp = SolverParams::defaults_for(p);
        double mu = sp.mu_ini, rho = sp.rho_ini;
        const auto res = gdf_descent(p, anchor, fa, mu, rho, z, p.eval(z), p.jac(z), sp, nullptr);
        CHECK(res.reason == DescentOutcome::EscapeFound);
        CHECK(res.steps == 0);
        CHECK(res.z == z);
    }
    SUBCASE("GDTEST1: candidate past the crest descends into the dominating well") {
        const auto& p = lookup("GDTEST1").problem;
        SolverParams sp = SolverParams::defaults_for(p);
        // anchor at the certified dominated local minimizer
        Vec anchor = Vec::Constant(1, 3.2869);
        const Vec fa = p.eval(anchor);
        Vec z = Vec::Constant(1, 2.88);  // just west of the crest
        const Vec fz = p.eval(z);
        CHECK_FALSE((fz.array() < fa.array()).all());  // not an instant escape
        double mu = sp.mu_ini, rho = sp.rho_ini;
        const auto res = gdf_descent(p, anchor, fa, mu, rho, z, fz, p.jac(z), sp, nullptr);
        CHECK(res.reason == DescentOutcome::EscapeFound);
        CHECK((res.fz.array() < fa.array()).all());
        // dense-grid certification says the dominating region is west of the hill
        CHECK(res.z[0] < 3.0);
    }
    SUBCASE("monotone G along an outward ray hits the box") {
        BoxProblem p;
        p.name = "flat";
        p.n = 1;
        p.m = 2;
        p.lb = Vec::Constant(1, 0.0);
        p.ub = Vec::Constant(1, 1.0);
        p.eval = [](const Vec&) { return Vec::Constant(2, 1.0); };
        p.jac = [](const Vec&) { return Mat::Zero(2, 1); };
        SolverParams sp = SolverParams::defaults_for(p);
        Vec anchor = Vec::Constant(1, 0.5);
        Vec z = Vec::Constant(1, 0.85);  // second step overshoots and clips
        double mu = sp.mu_ini, rho = sp.rho_ini;
        const auto res = gdf_descent(p, anchor, p.eval(anchor), mu, rho, z, p.eval(z), p.jac(z),
                                     sp, nullptr);
        CHECK(res.reason == DescentOutcome::BoundaryHit);
        CHECK(res.z[0] == doctest::Approx(1.0));
    }
}

TEST_CASE("mogdm_run") {
    SUBCASE("convex problem: no escape exists, single anchor") {
        BoxProblem p = convex_pair(3);
        SolverParams sp = SolverParams::defaults_for(p);
        sp.seed = 42;
        Rng rng(7);
        for (int t = 0; t < 3; ++t) {
            const auto run = mogdm_run(p, sp, rng.uniform_box(p.lb, p.ub), nullptr, t);
            CHECK(run.anchors.size() == 1);
            CHECK(run.escapes == 0);
        }
    }
    SUBCASE("GDTEST1: trapped starts escape with strictly decreasing anchors") {
        const auto& p = lookup("GDTEST1").problem;
        SolverParams sp = SolverParams::defaults_for(p);
        sp.seed = 11;
        // start beyond the hill; phase 1 lands on the dominated front
        const auto run = mogdm_run(p, sp, Vec::Constant(1, 4.5), nullptr, 0);
        CHECK(run.anchors.size() >= 2);
        CHECK(run.escapes >= 1);
        for (std::size_t k = 1; k < run.f_anchors.size(); ++k)
            CHECK((run.f_anchors[k].array() < run.f_anchors[k - 1].array()).all());
        // the final anchor reaches the global well (certified f < 1)
        CHECK(run.final_f().maxCoeff() < 1.0);
    }
    SUBCASE("determinism: same seed/stream, same trajectory") {
        const auto& p = lookup("GDTEST2").problem;
        SolverParams sp = SolverParams::defaults_for(p);
        sp.seed = 17;
        Vec z0(2);
        z0 << 4.0, 1.0;
        const auto a = mogdm_run(p, sp, z0, nullptr, 3);
        const auto b = mogdm_run(p, sp, z0, nullptr, 3);
        REQUIRE(a.anchors.size() == b.anchors.size());
        for (std::size_t k = 0; k < a.anchors.size(); ++k)
            CHECK(a.anchors[k] == b.anchors[k]);
    }
}

TEST_CASE("mogdm_front on small problems") {
    SUBCASE("GDTEST1: archives filled, PFG nondominated, |PFG| >= 1") {
        const auto& p = lookup("GDTEST1").problem;
        SolverParams sp = SolverParams::defaults_for(p);
        sp.seed = 5;
        sp.n_starts = 24;
        const auto report = mogdm_front(p, sp, 2);
        CHECK(report.wpf.size() >= 1);
        CHECK(report.pfg.size() >= 1);
        CHECK(report.pf.size() <= report.wpf.size());
        for (const auto& a : report.pfg.entries())
            for (const auto& b : report.pfg.entries()) CHECK_FALSE(dominates(a.f, b.f));
        // counters are filled and consistent
        CHECK(report.counters.f_evals > 0);
        CHECK(report.counters.jac_evals > 0);
    }
    SUBCASE("hypervolume(PFG) >= hypervolume(PF) with a shared reference") {
        for (const char* name : {"GDTEST1", "DTLZ1n2"}) {
            const auto& p = lookup(name).problem;
            SolverParams sp = SolverParams::defaults_for(p);
            sp.seed = 9;
            sp.n_starts = 24;
            const auto report = mogdm_front(p, sp, 2);
            const auto pf = report.pf.objective_vectors();
            const auto pfg = report.pfg.objective_vectors();
            std::vector<std::vector<Vec>> both = {pf, pfg};
            const Vec ref = shared_reference(both);
            CHECK(hypervolume(pfg, ref).value >= hypervolume(pf, ref).value - 1e-9);
        }
    }
    SUBCASE("anchor trajectories strictly decrease and PFG entries trace back to WPF") {
        const auto& p = lookup("DTLZ3n2").problem;
        SolverParams sp = SolverParams::defaults_for(p);
        sp.seed = 23;
        sp.n_starts = 16;
        const auto report = mogdm_front(p, sp, 2);
        CHECK(report.pfg.size() >= 1);
        CHECK(report.escapes >= 0);
    }
}
