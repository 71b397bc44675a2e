#include <doctest.h>

#include <cmath>

#include "mogd/metrics.hpp"

using namespace mogd;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

std::vector<int> brute_force_filter(const std::vector<Vec>& pts) {
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        bool dom = false;
        for (int j = 0; j < static_cast<int>(pts.size()); ++j)
            if (j != i && dominates(pts[j], pts[i])) dom = true;
        if (!dom) keep.push_back(i);
    }
    return keep;
}

// Monte Carlo hypervolume oracle: fraction of uniform samples in
// [ideal, ref] dominated by the front.
struct McEstimate {
    double value;
    double stderr_;
};

McEstimate mc_hypervolume(const std::vector<Vec>& front, const Vec& ref, int samples,
                          std::uint64_t seed) {
    const int m = static_cast<int>(ref.size());
    Vec lo = front[0];
    for (const auto& p : front) lo = lo.cwiseMin(p);
    double box = 1.0;
    for (int j = 0; j < m; ++j) box *= (ref[j] - lo[j]);
    Rng rng(seed);
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
        Vec u(m);
        for (int j = 0; j < m; ++j) u[j] = rng.uniform(lo[j], ref[j]);
        for (const auto& p : front) {
            if ((p.array() <= u.array()).all()) {
                ++hits;
                break;
            }
        }
    }
    const double frac = static_cast<double>(hits) / samples;
    return {frac * box, std::sqrt(frac * (1 - frac) / samples) * box};
}

}  // namespace

TEST_CASE("pareto_filter: named cases") {
    CHECK(pareto_filter({v2(0, 1), v2(1, 0), v2(1, 1)}) == std::vector<int>{0, 1});
    // identical points never dominate each other
    CHECK(pareto_filter({v2(3, 3), v2(3, 3), v2(3, 3)}) == std::vector<int>{0, 1, 2});
}

TEST_CASE("pareto_filter: brute-force oracle and idempotence") {
    Rng rng(99);
    for (int t = 0; t < 20; ++t) {
        const int N = 50 + 25 * t;
        const int m = 2 + t % 2;
        std::vector<Vec> pts;
        for (int i = 0; i < N; ++i) {
            Vec f(m);
            for (int j = 0; j < m; ++j) f[j] = std::floor(rng.uniform(0, 12));
            pts.push_back(f);
        }
        const auto ours = pareto_filter(pts);
        CHECK(ours == brute_force_filter(pts));
        // idempotence
        std::vector<Vec> reduced;
        for (int i : ours) reduced.push_back(pts[i]);
        const auto again = pareto_filter(reduced);
        CHECK(again.size() == reduced.size());
    }
}

TEST_CASE("hypervolume: exact hand cases") {
    CHECK(hypervolume({v2(0, 0)}, v2(1, 1)).value == doctest::Approx(1.0));
    // inclusion-exclusion of two 2x1 rectangles minus the 1x1 overlap
    CHECK(hypervolume({v2(1, 2), v2(2, 1)}, v2(3, 3)).value == doctest::Approx(3.0));
    // dominated point adds nothing
    CHECK(hypervolume({v2(1, 2), v2(2, 1), v2(2, 2)}, v2(3, 3)).value == doctest::Approx(3.0));
    // point outside the reference corner discarded with a count
    const auto res = hypervolume({v2(1, 2), v2(5, 0)}, v2(3, 3));
    CHECK(res.n_discarded == 1);
    CHECK(res.value == doctest::Approx(2.0));
    // m = 3 box
    CHECK(hypervolume({v3(0, 0, 0)}, v3(1, 2, 3)).value == doctest::Approx(6.0));
    // m = 3 two-point case by hand: slabs [0,1] and [1,2] along f3
    // points (0,1,0) and (1,0,1), ref (2,2,2):
    //   slab z in [0,1]: only (0,1,0): area (2-0)(2-1) = 2
    //   slab z in [1,2]: both: area of union = 2*1 + 1*2 - 1*1 = 3
    CHECK(hypervolume({v3(0, 1, 0), v3(1, 0, 1)}, v3(2, 2, 2)).value == doctest::Approx(5.0));
    CHECK_THROWS_AS(hypervolume({}, Vec::Ones(4)), UnsupportedError);
}

TEST_CASE("hypervolume: Monte Carlo oracle on random fronts") {
    Rng rng(123);
    for (int t = 0; t < 20; ++t) {
        std::vector<Vec> front;
        const int N = 3 + t;
        for (int i = 0; i < N; ++i) front.push_back(v2(rng.uniform(0, 5), rng.uniform(0, 5)));
        const Vec ref = v2(6, 6);
        const double exact = hypervolume(front, ref).value;
        const auto mc = mc_hypervolume(front, ref, 200000, 1000 + t);
        CHECK(std::fabs(exact - mc.value) <= 3.5 * mc.stderr_ + 1e-9);
    }
}

TEST_CASE("hypervolume: m=3 slicing vs Monte Carlo") {
    Rng rng(321);
    for (int t = 0; t < 5; ++t) {
        std::vector<Vec> front;
        for (int i = 0; i < 6 + t; ++i)
            front.push_back(v3(rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4)));
        const Vec ref = v3(5, 5, 5);
        const double exact = hypervolume(front, ref).value;
        const auto mc = mc_hypervolume(front, ref, 200000, 77 + t);
        CHECK(std::fabs(exact - mc.value) <= 3.5 * mc.stderr_ + 1e-9);
    }
}

TEST_CASE("hypervolume: monotone and translation consistent") {
    Rng rng(55);
    std::vector<Vec> front = {v2(1, 4), v2(2, 2), v2(4, 1)};
    const Vec ref = v2(6, 6);
    const double base = hypervolume(front, ref).value;

    // adding a dominated point changes nothing
    auto with_dom = front;
    with_dom.push_back(v2(5, 5));
    CHECK(hypervolume(with_dom, ref).value == doctest::Approx(base));

    // adding a nondominated point never decreases
    auto with_nd = front;
    with_nd.push_back(v2(0.5, 5.5));
    CHECK(hypervolume(with_nd, ref).value >= base);

    // translation consistency (exact)
    Vec shift = v2(3.25, -1.5);
    std::vector<Vec> moved;
    for (const auto& p : front) moved.push_back(p + shift);
    CHECK(hypervolume(moved, ref + shift).value == doctest::Approx(base).epsilon(1e-14));
}

TEST_CASE("delta_spread") {
    SUBCASE("uniform front coinciding with extremes gives 0") {
        std::vector<Vec> front = {v2(0, 3), v2(1, 2), v2(2, 1), v2(3, 0)};
        CHECK(delta_spread(front, {v2(0, 3), v2(3, 0)}) == doctest::Approx(0.0));
    }
    SUBCASE("single point is 1 by convention") {
        CHECK(delta_spread({v2(1, 1)}, {v2(0, 2), v2(2, 0)}) == 1.0);
    }
    SUBCASE("hand-computed three-point case with gaps (1, 3)") {
        // collinear points along f1 at gaps 1 and 3, extremes at the endpoints
        std::vector<Vec> front = {v2(0, 0), v2(1, 0), v2(4, 0)};
        const double d = delta_spread(front, {v2(0, 0), v2(4, 0)});
        CHECK(d == doctest::Approx(0.5));  // (0+0+|1-2|+|3-2|)/(0+0+2*2)
    }
    SUBCASE("empty front is undefined") {
        CHECK_THROWS_AS(delta_spread({}, {v2(0, 0), v2(1, 1)}), UndefinedError);
    }
}

TEST_CASE("nn_gap_deviation: even spacing gives 0") {
    std::vector<Vec> even = {v3(0, 0, 0), v3(1, 0, 0), v3(2, 0, 0), v3(3, 0, 0)};
    CHECK(nn_gap_deviation(even) == doctest::Approx(0.0));
    std::vector<Vec> uneven = {v3(0, 0, 0), v3(0.1, 0, 0), v3(3, 0, 0)};
    CHECK(nn_gap_deviation(uneven) > 0.1);
}

TEST_CASE("shared_reference") {
    const Vec ref = shared_reference({{v2(0, 1), v2(1, 0)}, {v2(2, 2)}});
    CHECK(ref[0] == doctest::Approx(2 + 0.1 * 2));
    CHECK(ref[1] == doctest::Approx(2 + 0.1 * 2));
}

TEST_CASE("performance_profile") {
    SUBCASE("strictly best solver has rho(1) = 1") {
        const auto curves = performance_profile({"a", "b"}, {{1, 1, 1}, {2, 3, 4}});
        CHECK(curves[0].values.front() == doctest::Approx(1.0));
        CHECK(curves[1].values.front() < 1.0);
        CHECK(curves[1].values.back() == doctest::Approx(1.0));
    }
    SUBCASE("identical costs tie at rho(1) = 1 for both") {
        const auto curves = performance_profile({"a", "b"}, {{2, 5}, {2, 5}});
        CHECK(curves[0].values.front() == doctest::Approx(1.0));
        CHECK(curves[1].values.front() == doctest::Approx(1.0));
    }
    SUBCASE("hand-computed 3 x 5 table") {
        // costs per solver over 5 problems
        const std::vector<std::vector<double>> costs = {
            {1, 2, 4, 1, 10}, {2, 2, 2, 3, 10}, {4, 4, 1, 9, 10}};
        const auto curves = performance_profile({"s1", "s2", "s3"}, costs, 512);
        // ratios: s1 {1,1,4,1,1}, s2 {2,1,2,3,1}, s3 {4,2,1,9,1}
        // exact step function from the sorted ratios (the grid samples it)
        auto value_at = [&](int s, double tau) {
            const auto& r = curves[s].ratios;
            std::size_t cnt = 0;
            while (cnt < r.size() && r[cnt] <= tau) ++cnt;
            return static_cast<double>(cnt) / static_cast<double>(r.size());
        };
        CHECK(value_at(0, 1.0) == doctest::Approx(0.8));
        CHECK(value_at(1, 1.0) == doctest::Approx(0.4));
        CHECK(value_at(2, 1.0) == doctest::Approx(0.4));
        CHECK(value_at(0, 3.9) == doctest::Approx(0.8));
        CHECK(value_at(0, 4.0) == doctest::Approx(1.0));
        CHECK(value_at(1, 3.0) == doctest::Approx(1.0));
        CHECK(value_at(2, 8.9) == doctest::Approx(0.8));
        CHECK(value_at(2, 9.0) == doctest::Approx(1.0));
        // curves are nondecreasing step functions bounded by 1
        for (const auto& c : curves) {
            for (std::size_t i = 1; i < c.values.size(); ++i) CHECK(c.values[i] >= c.values[i - 1]);
            CHECK(c.values.back() <= 1.0 + 1e-15);
        }
    }
    SUBCASE("failures get infinite ratios; all-fail problems excluded") {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const auto curves = performance_profile({"a", "b"}, {{1, nan, nan}, {2, 4, nan}});
        // problem 3 excluded; a fails problem 2
        CHECK(curves[0].values.back() == doctest::Approx(0.5));
        CHECK(curves[1].values.back() == doctest::Approx(1.0));
    }
}
