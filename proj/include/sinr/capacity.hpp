#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "sinr/affectance.hpp"
#include "sinr/power_control.hpp"

namespace sinr {

struct GrTrace {
    std::vector<int> processed;   // link ids in ascending (length, id) order
    std::vector<double> bhat;     // acceptance value tested per processed link
    std::vector<bool> accepted;   // parallel to processed
    std::vector<int> accepted_R;  // ids in processing order
    std::vector<int> final_X;     // sorted ids
    ObliviousPower assignment;
};

namespace detail {
inline std::vector<int> by_ascending_length(const Instance& inst,
                                            const std::vector<int>& S) {
    std::vector<int> order = S;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return inst.shorter(a, b); });
    return order;
}
}  // namespace detail

// Single-pass greedy: process links in increasing length, accept while the
// symmetric affectance from the already-accepted (shorter) links stays below
// 1/2, then keep the accepted links whose in-affectance is at most 1.
inline GrTrace gr_subset(const Instance& inst, const std::vector<int>& S, double p) {
    GrTrace trace;
    if (S.empty()) return trace;

    std::vector<int> sub = S;
    std::sort(sub.begin(), sub.end());
    double lmax = 0.0;
    for (int v : sub) lmax = std::max(lmax, inst.length(v));
    const SinrParams& prm = inst.params();
    trace.assignment = {p, prm.noise == 0.0
                               ? 1.0
                               : 2.0 * prm.beta * prm.noise *
                                     std::pow(lmax, (1.0 - p) * prm.alpha)};
    // Affectances only among the subset's links; links outside may not be
    // non-weak under this scale.
    PowerAssignment P = trace.assignment;
    const std::size_t k = sub.size();
    std::vector<std::size_t> pos(inst.size(), k);
    for (std::size_t i = 0; i < k; ++i) pos[static_cast<std::size_t>(sub[i])] = i;
    std::vector<double> a(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) a[i * k + j] = affectance(inst, P, sub[i], sub[j]);
    auto aff = [&](int w, int v) {
        return a[pos[static_cast<std::size_t>(w)] * k + pos[static_cast<std::size_t>(v)]];
    };

    for (int v : detail::by_ascending_length(inst, sub)) {
        double b = 0.0;  // every accepted link precedes v in the length order
        for (int w : trace.accepted_R) b += aff(w, v) + aff(v, w);
        trace.processed.push_back(v);
        trace.bhat.push_back(b);
        const bool take = b < 0.5;
        trace.accepted.push_back(take);
        if (take) trace.accepted_R.push_back(v);
    }
    for (int v : trace.accepted_R) {
        double in_aff = 0.0;
        for (int w : trace.accepted_R) in_aff += aff(w, v);
        if (in_aff <= 1.0) trace.final_X.push_back(v);
    }
    std::sort(trace.final_X.begin(), trace.final_X.end());
    return trace;
}

inline GrTrace gr(const Instance& inst, double p) {
    std::vector<int> all(inst.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return gr_subset(inst, all, p);
}

struct PowerMode {
    enum class Kind { Oblivious, Pc };
    Kind kind = Kind::Oblivious;
    double p = 0.5;

    static PowerMode oblivious(double p) { return {Kind::Oblivious, p}; }
    static PowerMode pc() { return {Kind::Pc, 0.0}; }
};

inline int oracle_cap(int fallback) {
    if (const char* env = std::getenv("SINR_MAX_ORACLE_N")) return std::atoi(env);
    return fallback;
}

namespace detail {
// Feasibility of every subset of the instance, as a 2^n table. Subset
// closure prunes the PC case: a mask is only solved when all one-removed
// submasks are feasible.
inline std::vector<char> feasible_masks(const Instance& inst, PowerMode mode) {
    const int n = static_cast<int>(inst.size());
    std::vector<char> feas(std::size_t{1} << n, 0);
    feas[0] = 1;
    PowerAssignment P = non_weak_scale(inst, mode.p);
    std::vector<int> members;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        bool closed = true;
        for (int b = 0; b < n; ++b)
            if ((mask >> b) & 1u)
                if (!feas[mask & ~(std::uint32_t{1} << b)]) {
                    closed = false;
                    break;
                }
        if (!closed) continue;
        members.clear();
        for (int b = 0; b < n; ++b)
            if ((mask >> b) & 1u) members.push_back(b);
        if (mode.kind == PowerMode::Kind::Oblivious)
            feas[mask] = is_feasible(inst, P, members);
        else
            feas[mask] = pc_solve(inst, members).feasible;
    }
    return feas;
}

inline std::vector<int> mask_to_ids(std::uint32_t mask, int n) {
    std::vector<int> ids;
    for (int b = 0; b < n; ++b)
        if ((mask >> b) & 1u) ids.push_back(b);
    return ids;
}
}  // namespace detail

// Exhaustive maximum feasible subset. Deterministic: among equal-size maxima
// the lexicographically smallest id set wins.
inline std::vector<int> brute_opt(const Instance& inst, PowerMode mode, int max_n = 16) {
    const int n = static_cast<int>(inst.size());
    if (n > oracle_cap(max_n))
        throw SizeLimitError("brute_opt: instance size " + std::to_string(n) +
                             " exceeds cap " + std::to_string(oracle_cap(max_n)));
    const auto feas = detail::feasible_masks(inst, mode);
    std::vector<int> best;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        if (!feas[mask]) continue;
        auto ids = detail::mask_to_ids(mask, n);
        if (ids.size() > best.size() || (ids.size() == best.size() && ids < best))
            best = std::move(ids);
    }
    return best;
}

struct Schedule {
    std::vector<std::vector<int>> slots;
    std::vector<ObliviousPower> assignments;  // per slot
};

// Repeated greedy: each round schedules the kept set X of a fresh run over
// the remaining links. Every round makes progress: the shortest remaining
// link is always accepted and at least half the accepted links survive.
inline Schedule schedule_gr(const Instance& inst, double p) {
    Schedule sched;
    std::vector<int> remaining(inst.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);
    while (!remaining.empty()) {
        GrTrace t = gr_subset(inst, remaining, p);
        if (t.final_X.empty())
            throw NumericalError("schedule_gr made no progress");
        sched.slots.push_back(t.final_X);
        sched.assignments.push_back(t.assignment);
        std::vector<int> next;
        std::set_difference(remaining.begin(), remaining.end(), t.final_X.begin(),
                            t.final_X.end(), std::back_inserter(next));
        remaining = std::move(next);
    }
    return sched;
}

// Exact minimum slot count via a set-cover DP over the 2^n feasibility table.
inline int brute_min_schedule(const Instance& inst, PowerMode mode, int max_n = 12) {
    const int n = static_cast<int>(inst.size());
    if (n > oracle_cap(max_n))
        throw SizeLimitError("brute_min_schedule: instance size " + std::to_string(n) +
                             " exceeds cap " + std::to_string(oracle_cap(max_n)));
    if (n == 0) return 0;
    const auto feas = detail::feasible_masks(inst, mode);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    constexpr int kInf = 1 << 20;
    std::vector<int> dp(full + 1, kInf);
    dp[0] = 0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const std::uint32_t low = mask & (~mask + 1);  // force the lowest link into a slot
        for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
            if (!(sub & low) || !feas[sub]) continue;
            dp[mask] = std::min(dp[mask], dp[mask ^ sub] + 1);
        }
        if (dp[mask] >= kInf)
            throw PreconditionError("some link is infeasible even alone; no schedule exists");
    }
    return dp[full];
}

}  // namespace sinr
