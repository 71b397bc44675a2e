#include <doctest.h>

#include <cmath>

#include "mogd/init.hpp"
#include "mogd/problems.hpp"

using namespace mogd;

namespace {

BoxProblem quadratic_pair() {
    // f = (z^2, (z-1)^2) on [-2, 2]
    BoxProblem p;
    p.name = "qpair";
    p.n = 1;
    p.m = 2;
    p.lb = Vec::Constant(1, -2.0);
    p.ub = Vec::Constant(1, 2.0);
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

TEST_CASE("sample_starts: box membership, determinism, mean statistics") {
    const auto& p = lookup("GDTEST2").problem;
    const auto a = sample_starts(p, 500, 77);
    const auto b = sample_starts(p, 500, 77);
    const auto c = sample_starts(p, 500, 78);
    REQUIRE(a.size() == 500);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(p.in_box(a[i]));
        CHECK(a[i] == b[i]);
    }
    CHECK(a[0] != c[0]);

    // per-coordinate mean within 5 sigma of the box midpoint at N = 10000
    const auto big = sample_starts(p, 10000, 5);
    Vec mean = Vec::Zero(p.n);
    for (const auto& z : big) mean += z;
    mean /= static_cast<double>(big.size());
    for (int i = 0; i < p.n; ++i) {
        const double range = p.ub[i] - p.lb[i];
        const double sigma = range / std::sqrt(12.0) / std::sqrt(10000.0);
        CHECK(std::fabs(mean[i] - 0.5 * (p.lb[i] + p.ub[i])) < 5 * sigma);
    }
}

TEST_CASE("spread_filter") {
    SUBCASE("keep = all is the identity up to order") {
        std::vector<Vec> fv;
        for (int i = 0; i < 6; ++i) {
            Vec f(2);
            f << i, 5 - i;
            fv.push_back(f);
        }
        Vec ideal(2), nadir(2);
        ideal << 0, 0;
        nadir << 5, 5;
        auto idx = spread_filter(fv, ideal, nadir, 6);
        CHECK(idx.size() == 6);
        std::sort(idx.begin(), idx.end());
        CHECK(idx == std::vector<int>{0, 1, 2, 3, 4, 5});
    }
    SUBCASE("keep = 2 from collinear equispaced values returns the extremes") {
        std::vector<Vec> fv;
        for (int i = 0; i < 5; ++i) {
            Vec f(2);
            f << i, 4 - i;
            fv.push_back(f);
        }
        Vec ideal(2), nadir(2);
        ideal << 0, 0;
        nadir << 4, 4;
        const auto idx = spread_filter(fv, ideal, nadir, 2);
        REQUIRE(idx.size() == 2);
        // the two per-objective minimizers are exactly the extremes
        CHECK(((idx[0] == 0 && idx[1] == 4) || (idx[0] == 4 && idx[1] == 0)));
    }
    SUBCASE("selection is permutation-invariant up to ties") {
        Rng rng(3);
        std::vector<Vec> fv;
        for (int i = 0; i < 30; ++i) {
            Vec f(2);
            f << rng.uniform(0, 1), rng.uniform(0, 1);
            fv.push_back(f);
        }
        Vec ideal = Vec::Zero(2), nadir = Vec::Ones(2);
        const auto idx = spread_filter(fv, ideal, nadir, 10);
        // reversed input
        std::vector<Vec> rev(fv.rbegin(), fv.rend());
        auto ridx = spread_filter(rev, ideal, nadir, 10);
        for (auto& i : ridx) i = 29 - i;
        auto sorted_a = idx, sorted_b = ridx;
        std::sort(sorted_a.begin(), sorted_a.end());
        std::sort(sorted_b.begin(), sorted_b.end());
        CHECK(sorted_a == sorted_b);
        // no duplicates, exact size
        CHECK(std::unique(sorted_a.begin(), sorted_a.end()) == sorted_a.end());
    }
    SUBCASE("degenerate normalization component floored") {
        std::vector<Vec> fv = {Vec::Zero(2), Vec::Ones(2)};
        Vec ideal = Vec::Zero(2), nadir(2);
        nadir << 0.0, 1.0;  // zero range in the first component
        CHECK_NOTHROW(spread_filter(fv, ideal, nadir, 2));
    }
}

TEST_CASE("payoff_table on the convex pair") {
    BoxProblem p = quadratic_pair();
    SolverParams sp = SolverParams::defaults_for(p);
    sp.seed = 1;
    EvalCounters counters;
    const auto table = payoff_table(p, sp, &counters, 2);
    // minimizers 0 and 1; rows (0,1) and (1,0)
    CHECK(table.minimizers[0][0] == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(table.minimizers[1][0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(table.ideal[0] == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(table.ideal[1] == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(table.nadir[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(table.nadir[1] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK((table.ideal.array() <= table.nadir.array()).all());
    CHECK(counters.f_evals > 0);
}

TEST_CASE("payoff_table: identical objectives collapse ideal to nadir") {
    BoxProblem p = quadratic_pair();
    p.eval = [](const Vec& z) { return Vec::Constant(2, z[0] * z[0]); };
    p.jac = [](const Vec& z) {
        Mat J(2, 1);
        J << 2 * z[0], 2 * z[0];
        return J;
    };
    SolverParams sp = SolverParams::defaults_for(p);
    const auto table = payoff_table(p, sp);
    CHECK((table.nadir - table.ideal).norm() < 1e-6);
}

TEST_CASE("make_init_plan: starts inside the box, exactly N of them") {
    const auto& p = lookup("GDTEST1").problem;
    SolverParams sp = SolverParams::defaults_for(p);
    sp.seed = 4;
    sp.n_starts = 40;
    const auto plan = make_init_plan(p, sp, nullptr, 2);
    CHECK(plan.starts.size() == 40);
    for (const auto& z : plan.starts) CHECK(p.in_box(z));
    CHECK((plan.ideal.array() <= plan.nadir.array()).all());
}
