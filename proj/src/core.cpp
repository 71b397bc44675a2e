#include "mogd/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace mogd {

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed, stream)) {}

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a;
    std::uint64_t h = splitmix64(x);
    x = h ^ (b + 0x9e3779b97f4a7c15ULL);
    return splitmix64(x);
}

std::uint64_t Rng::next_u64() {
    return splitmix64(state_);
}

double Rng::uniform01() {
    // 53 random bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

Vec Rng::uniform_box(const Vec& lb, const Vec& ub) {
    Vec z(lb.size());
    for (Eigen::Index i = 0; i < lb.size(); ++i) z[i] = uniform(lb[i], ub[i]);
    return z;
}

// ---------------------------------------------------------------------------
// BoxProblem
// ---------------------------------------------------------------------------

Vec BoxProblem::clip(const Vec& z) const {
    return z.cwiseMax(lb).cwiseMin(ub);
}

bool BoxProblem::in_box(const Vec& z, double tol) const {
    return (z.array() >= lb.array() - tol).all() && (z.array() <= ub.array() + tol).all();
}

double BoxProblem::max_range() const {
    return (ub - lb).maxCoeff();
}

void BoxProblem::validate() const {
    if (n <= 0 || m <= 0) throw ContractError(name + ": n and m must be positive");
    if (lb.size() != n || ub.size() != n) throw ContractError(name + ": bound dimension mismatch");
    if (!((lb.array() < ub.array()).all())) throw ContractError(name + ": lb < ub must hold componentwise");
    if (!eval || !jac) throw ContractError(name + ": eval and jac must be set");
}

Vec eval_at(const BoxProblem& p, const Vec& z, EvalCounters* counters) {
    if (counters) counters->f_evals += 1;
    return p.eval(z);
}

Mat jac_at(const BoxProblem& p, const Vec& z, EvalCounters* counters) {
    if (counters) counters->jac_evals += 1;
    return p.jac(z);
}

BoxProblem single_objective(const BoxProblem& p, int j) {
    if (j < 0 || j >= p.m) throw ContractError("single_objective: index out of range");
    BoxProblem s;
    s.name = p.name + "#f" + std::to_string(j + 1);
    s.n = p.n;
    s.m = 1;
    s.lb = p.lb;
    s.ub = p.ub;
    s.eval = [inner = p.eval, j](const Vec& z) {
        Vec f(1);
        f[0] = inner(z)[j];
        return f;
    };
    s.jac = [inner = p.jac, j](const Vec& z) { return Mat(inner(z).row(j)); };
    return s;
}

// ---------------------------------------------------------------------------
// SolverParams
// ---------------------------------------------------------------------------

SolverParams SolverParams::defaults_for(const BoxProblem& p) {
    SolverParams sp;
    const double K = (p.ub - p.lb).norm();
    sp.delta = 0.01;
    sp.rho_ini = sp.delta / (K + 1e-3);
    sp.rho_U = sp.delta / K;
    sp.rho_L = 1e-5;
    sp.kappa = 1e-4 * std::sqrt(static_cast<double>(p.n));
    sp.eps_neighborhood = ((p.ub - p.lb).minCoeff() > 10.0) ? 1.0 : 0.1;
    sp.validate();
    return sp;
}

void SolverParams::validate() const {
    auto in_open01 = [](double v) { return v > 0.0 && v < 1.0; };
    if (!in_open01(mu_ini)) throw ContractError("mu_ini must be in (0,1)");
    if (rho_ini <= 0) throw ContractError("rho_ini must be positive");
    if (rho_L <= 0) throw ContractError("rho_L must be positive");
    if (rho_U <= 0) throw ContractError("rho_U must be positive");
    if (!in_open01(rho_hat)) throw ContractError("rho_hat must be in (0,1)");
    if (!in_open01(mu_hat)) throw ContractError("mu_hat must be in (0,1)");
    if (kappa <= 0) throw ContractError("kappa must be positive");
    if (eps_neighborhood <= 0) throw ContractError("eps_neighborhood must be positive");
    if (alpha_bar_U <= 0) throw ContractError("alpha_bar_U must be positive");
    if (!in_open01(beta)) throw ContractError("beta must be in (0,1)");
    if (!in_open01(r)) throw ContractError("r must be in (0,1)");
    if (delta <= 0) throw ContractError("delta must be positive");
    if (tau <= 0) throw ContractError("tau must be positive");
    if (!in_open01(c)) throw ContractError("c must be in (0,1)");
    if (l < 1) throw ContractError("l must be a positive integer");
    if (n_starts < 1) throw ContractError("n_starts must be positive");
    if (max_param_reductions < 1) throw ContractError("max_param_reductions must be positive");
}

// ---------------------------------------------------------------------------
// Dominance / archives
// ---------------------------------------------------------------------------

bool dominates(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ContractError("dominates: length mismatch");
    bool strict = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

bool ParetoArchive::is_duplicate(const Vec& z) const {
    for (const auto& e : entries_) {
        if ((e.z - z).norm() < kDedupTol) return true;
    }
    return false;
}

void ParetoArchive::insert(const Vec& z, const Vec& fz) {
    if (is_duplicate(z)) return;
    if (mode_ == ArchiveMode::Raw) {
        entries_.push_back({z, fz});
        return;
    }
    for (const auto& e : entries_) {
        if (dominates(e.f, fz)) return;
    }
    std::erase_if(entries_, [&](const Entry& e) { return dominates(fz, e.f); });
    entries_.push_back({z, fz});
}

std::vector<Vec> ParetoArchive::objective_vectors() const {
    std::vector<Vec> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.f);
    return out;
}

ParetoArchive ParetoArchive::filtered() const {
    ParetoArchive out(ArchiveMode::Filtered);
    for (const auto& e : entries_) out.insert(e.z, e.f);
    return out;
}

// ---------------------------------------------------------------------------
// estimate_bounds
// ---------------------------------------------------------------------------

BoundsInfo estimate_bounds(const BoxProblem& p, int sample_count, std::uint64_t seed) {
    if (sample_count < 1) throw ContractError("estimate_bounds: sample_count must be >= 1");
    BoundsInfo info;
    info.K = (p.ub - p.lb).norm();
    Rng rng(seed, 0x626f756e6473ULL);
    double max_norm = 0.0;
    for (int s = 0; s < sample_count; ++s) {
        // interior samples: stay away from the faces by 1% of each range
        Vec z(p.n);
        for (int i = 0; i < p.n; ++i) {
            const double pad = 0.01 * (p.ub[i] - p.lb[i]);
            z[i] = rng.uniform(p.lb[i] + pad, p.ub[i] - pad);
        }
        const Mat J = p.jac(z);
        for (int j = 0; j < p.m; ++j) {
            const double g = J.row(j).norm();
            if (!std::isfinite(g))
                throw ProblemDefinitionError(p.name + ": non-finite gradient at a sample point");
            max_norm = std::max(max_norm, g);
        }
    }
    info.M = std::max(1.2 * max_norm, 1e-8);
    info.L = info.M;
    return info;
}

// ---------------------------------------------------------------------------
// parallel_for
// ---------------------------------------------------------------------------

void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    workers = std::min(workers, count);
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace mogd
