#include "mogd/init.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mogd/globalsearch.hpp"

namespace mogd {

std::vector<Vec> sample_starts(const BoxProblem& p, int N, std::uint64_t seed) {
    if (N < 1) throw ContractError("sample_starts: N must be >= 1");
    Rng rng(seed, 0x696e6974ULL);  // "init" stream
    std::vector<Vec> starts;
    starts.reserve(N);
    for (int i = 0; i < N; ++i) starts.push_back(rng.uniform_box(p.lb, p.ub));
    return starts;
}

std::vector<int> spread_filter(const std::vector<Vec>& f_values, const Vec& ideal,
                               const Vec& nadir, int keep) {
    const int N = static_cast<int>(f_values.size());
    if (keep > N) throw ContractError("spread_filter: keep exceeds candidate count");
    Vec range = (nadir - ideal).cwiseMax(1e-12);

    auto norm_dist = [&](int a, int b) {
        return ((f_values[a] - f_values[b]).array() / range.array()).matrix().norm();
    };

    std::vector<int> selected;
    std::vector<char> used(N, 0);
    std::vector<double> min_dist(N, std::numeric_limits<double>::infinity());

    auto take = [&](int idx) {
        selected.push_back(idx);
        used[idx] = 1;
        for (int i = 0; i < N; ++i)
            if (!used[i]) min_dist[i] = std::min(min_dist[i], norm_dist(i, idx));
    };

    // seed with the per-objective minimizers
    const int m = static_cast<int>(ideal.size());
    for (int j = 0; j < m && static_cast<int>(selected.size()) < keep; ++j) {
        int best = -1;
        for (int i = 0; i < N; ++i) {
            if (used[i]) continue;
            if (best < 0 || f_values[i][j] < f_values[best][j]) best = i;
        }
        if (best >= 0) take(best);
    }
    // greedy max-min fill
    while (static_cast<int>(selected.size()) < keep) {
        int best = -1;
        for (int i = 0; i < N; ++i) {
            if (used[i]) continue;
            if (best < 0 || min_dist[i] > min_dist[best]) best = i;
        }
        take(best);
    }
    return selected;
}

PayoffTable payoff_table(const BoxProblem& p, const SolverParams& sp, EvalCounters* counters,
                         int jobs) {
    if (p.m < 2) throw ContractError("payoff_table: needs m >= 2");
    PayoffTable table;
    table.rows.resize(p.m);
    table.minimizers.resize(p.m);

    const Vec mid = 0.5 * (p.lb + p.ub);
    const std::vector<Vec> starts = {p.lb, mid, p.ub};

    struct Cell {
        Vec x;
        double value = std::numeric_limits<double>::infinity();
        EvalCounters counters;
    };
    std::vector<Cell> cells(3 * p.m);
    parallel_for(jobs, 3 * p.m, [&](int t) {
        const int j = t / 3;
        const int k = t % 3;
        const BoxProblem pj = single_objective(p, j);
        auto run = mogdm_run(pj, sp, starts[k], &cells[t].counters,
                             Rng::mix(0x7061796fULL, static_cast<std::uint64_t>(t)));
        cells[t].x = run.final_anchor();
        cells[t].value = run.final_f()[0];
    });

    for (int j = 0; j < p.m; ++j) {
        int best = 3 * j;
        for (int k = 1; k < 3; ++k)
            if (cells[3 * j + k].value < cells[best].value) best = 3 * j + k;
        table.minimizers[j] = cells[best].x;
        table.rows[j] = eval_at(p, cells[best].x, counters);
    }
    if (counters)
        for (const auto& c : cells) counters->merge(c.counters);

    table.ideal = table.rows[0];
    table.nadir = table.rows[0];
    for (int j = 1; j < p.m; ++j) {
        table.ideal = table.ideal.cwiseMin(table.rows[j]);
        table.nadir = table.nadir.cwiseMax(table.rows[j]);
    }
    return table;
}

InitPlan make_init_plan(const BoxProblem& p, const SolverParams& sp, EvalCounters* counters,
                        int jobs, int oversample) {
    if (oversample < 1) throw ContractError("make_init_plan: oversample must be >= 1");
    InitPlan plan;
    plan.seed = sp.seed;

    const auto table = payoff_table(p, sp, counters, jobs);
    plan.ideal = table.ideal;
    plan.nadir = table.nadir;

    const int raw_count = oversample * sp.n_starts;
    auto raw = sample_starts(p, raw_count, sp.seed);
    std::vector<Vec> f_values(raw.size());
    parallel_for(jobs, raw_count, [&](int i) { f_values[i] = p.eval(raw[i]); });
    if (counters) counters->f_evals += raw_count;

    const auto idx = spread_filter(f_values, plan.ideal, plan.nadir, sp.n_starts);
    plan.starts.reserve(idx.size());
    for (int i : idx) plan.starts.push_back(raw[i]);
    return plan;
}

}  // namespace mogd
