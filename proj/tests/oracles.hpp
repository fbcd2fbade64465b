// Test-only reference implementations, independent of the library's
// computation paths.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sinr/sinr.hpp"

namespace oracle {

// Raw SINR recomputation, written as the direct ratio test
// rather than the library's rearranged comparison.
inline bool sinr_feasible(const sinr::Instance& inst, const sinr::PowerAssignment& P,
                          const std::vector<int>& S) {
    const auto& prm = inst.params();
    for (int v : S) {
        double interference = 0.0;
        for (int w : S) {
            if (w == v) continue;
            const double d = inst.cross_dist(w, v);
            if (d == 0.0) return false;
            interference += sinr::power_of(P, inst, w) / std::pow(d, prm.alpha);
        }
        const double signal =
            sinr::power_of(P, inst, v) / std::pow(inst.length(v), prm.alpha);
        const double sinr_ratio = signal / (interference + prm.noise);
        if (prm.noise == 0.0 && interference == 0.0) continue;  // no denominator
        if (sinr_ratio < prm.beta) return false;
    }
    return true;
}

// Dense eigensolve spectral radius.
inline double spectral_radius_eigen(const std::vector<std::vector<double>>& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (n == 0) return 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    double rho = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) rho = std::max(rho, std::abs(es.eigenvalues()[i]));
    return rho;
}

// Double-summation aggregate, summing over explicit pair loops.
inline double sum_a_S_of_S(const sinr::AffectanceMatrix& A, const std::vector<int>& S) {
    double total = 0.0;
    for (int v : S)
        for (int w : S) total += A.at(w, v);
    return total;
}

inline double sum_b_S_of_S(const sinr::AffectanceMatrix& A, const std::vector<int>& S) {
    double total = 0.0;
    for (int v : S)
        for (int w : S) total += A.b(v, w);
    return total;
}

inline double sum_bhat_S_of_S(const sinr::AffectanceMatrix& A, const std::vector<int>& S) {
    double total = 0.0;
    for (int v : S)
        for (int w : S) total += A.b_hat(w, v);
    return total;
}

// Recursive maximum feasible subset enumerator (structure independent of the
// library's mask scan). Returns just the optimum size.
inline std::size_t max_feasible_recursive(const sinr::Instance& inst,
                                          const sinr::PowerMode& mode) {
    const int n = static_cast<int>(inst.size());
    sinr::PowerAssignment P = sinr::non_weak_scale(inst, mode.p);
    auto feasible = [&](const std::vector<int>& S) {
        if (mode.kind == sinr::PowerMode::Kind::Oblivious)
            return sinr::is_feasible(inst, P, S);
        return sinr::pc_solve(inst, S).feasible;
    };
    std::size_t best = 0;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (feasible(cur)) best = std::max(best, cur.size());
        for (int v = next; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

// Exhaustive minimum-partition-into-feasible-slots search (branching on the
// lowest unscheduled link), independent of the DP formulation.
inline int min_schedule_recursive(const sinr::Instance& inst, const sinr::PowerMode& mode) {
    const int n = static_cast<int>(inst.size());
    sinr::PowerAssignment P = sinr::non_weak_scale(inst, mode.p);
    auto feasible = [&](const std::vector<int>& S) {
        if (mode.kind == sinr::PowerMode::Kind::Oblivious)
            return sinr::is_feasible(inst, P, S);
        return sinr::pc_solve(inst, S).feasible;
    };
    int best = n + 1;
    std::vector<std::vector<int>> slots;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(slots.size()) >= best) return;
        if (next == n) {
            best = std::min(best, static_cast<int>(slots.size()));
            return;
        }
        // index loop: deeper recursion grows `slots`, invalidating references
        const std::size_t open = slots.size();
        for (std::size_t i = 0; i < open; ++i) {
            slots[i].push_back(next);
            if (feasible(slots[i])) self(self, next + 1);
            slots[i].pop_back();
        }
        slots.push_back({next});
        if (feasible(slots.back())) self(self, next + 1);
        slots.pop_back();
    };
    rec(rec, 0);
    return best;
}

inline sinr::Instance random_instance(std::uint64_t seed, int n, double target_delta = 16.0,
                                      double world = 30.0,
                                      sinr::SinrParams prm = {3.0, 2.0, 1.0}) {
    sinr::GenConfig cfg;
    cfg.n = n;
    cfg.world_size = world;
    cfg.target_delta = target_delta;
    cfg.length_min = 1.0;
    cfg.seed = seed;
    return sinr::generate(cfg, prm);
}

}  // namespace oracle
