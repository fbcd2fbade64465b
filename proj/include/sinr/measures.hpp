#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <cstdio>

#include "sinr/affectance.hpp"
#include "sinr/capacity.hpp"
#include "sinr/independence.hpp"
#include "sinr/json_io.hpp"
#include "sinr/power_control.hpp"

namespace sinr {

struct MeasureReport {
    double value = 0.0;
    std::string method;  // exact | peel | sampled
    std::optional<std::pair<std::vector<int>, int>> witness;  // (set S, link v)
    std::string digest;
};

inline std::string instance_digest(const Instance& inst) {
    // FNV-1a over the canonical serialization
    const std::string text = save_instance(inst);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// bhat_v(S) under the non-weak oblivious assignment P_p.
inline double witness_interference(const Instance& inst, int v, const std::vector<int>& S,
                                   double p) {
    AffectanceMatrix A(inst, non_weak_scale(inst, p));
    return aggregate(A, AffKind::BHat, AffDir::ToSet, S, v);
}

namespace detail {
inline std::vector<int> random_maximal_feasible(const Instance& inst, PowerMode mode,
                                                std::mt19937_64& rng) {
    const int n = static_cast<int>(inst.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[rng() % static_cast<std::uint64_t>(i + 1)]);
    PowerAssignment P = non_weak_scale(inst, mode.p);
    std::vector<int> S;
    for (int v : order) {
        std::vector<int> cand = S;
        cand.push_back(v);
        std::sort(cand.begin(), cand.end());
        const bool ok = mode.kind == PowerMode::Kind::Oblivious
                            ? is_feasible(inst, P, cand)
                            : pc_solve(inst, cand).feasible;
        if (ok) S = std::move(cand);
    }
    return S;
}
}  // namespace detail

// I^p_Q(L): worst bhat interference (under P_p) between any link of L and
// any Q-feasible subset. Exact by subset enumeration up to max_n; sampled
// mode reports a lower bound from random maximal feasible sets.
inline MeasureReport inductive_independence(const Instance& inst, double p, PowerMode q_mode,
                                            int max_n = 14, int samples = 200,
                                            std::uint64_t seed = 0) {
    const int n = static_cast<int>(inst.size());
    MeasureReport rep;
    rep.digest = instance_digest(inst);
    AffectanceMatrix A(inst, non_weak_scale(inst, p));

    auto value_of = [&](const std::vector<int>& S) {
        double best = 0.0;
        int best_v = S.empty() ? 0 : S.front();
        for (int v = 0; v < n; ++v) {
            const double b = aggregate(A, AffKind::BHat, AffDir::ToSet, S, v);
            if (b > best) {
                best = b;
                best_v = v;
            }
        }
        return std::pair<double, int>{best, best_v};
    };

    if (n <= oracle_cap(max_n)) {
        rep.method = "exact";
        const auto feas = detail::feasible_masks(inst, q_mode);
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
            if (!feas[mask]) continue;
            const auto S = detail::mask_to_ids(mask, n);
            const auto [val, v] = value_of(S);
            if (!rep.witness || val > rep.value) {
                rep.value = val;
                rep.witness = {S, v};
            }
        }
        return rep;
    }
    rep.method = "sampled";
    std::mt19937_64 rng(seed);
    for (int t = 0; t < samples; ++t) {
        const auto S = detail::random_maximal_feasible(inst, q_mode, rng);
        if (S.empty()) continue;
        const auto [val, v] = value_of(S);
        if (!rep.witness || val > rep.value) {
            rep.value = val;
            rep.witness = {S, v};
        }
    }
    return rep;
}

// A^p(L) = max over subsets of a_S(S)/|S|. Exact enumerates subsets; peel
// runs the greedy peeling 2-approximation on the symmetric weights.
inline MeasureReport max_avg_affectance(const Instance& inst, double p,
                                        const std::string& method = "exact",
                                        int max_n = 14) {
    const int n = static_cast<int>(inst.size());
    MeasureReport rep;
    rep.digest = instance_digest(inst);
    rep.method = method;
    if (n == 0) return rep;
    AffectanceMatrix A(inst, non_weak_scale(inst, p));

    auto internal = [&](const std::vector<int>& S) {
        double total = 0.0;
        for (int v : S) total += aggregate(A, AffKind::A, AffDir::FromSet, S, v);
        return total;
    };

    if (method == "exact") {
        if (n > oracle_cap(max_n))
            throw SizeLimitError("max_avg_affectance exact: size " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(oracle_cap(max_n)));
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
            const auto S = detail::mask_to_ids(mask, n);
            const double val = internal(S) / static_cast<double>(S.size());
            if (!rep.witness || val > rep.value) {
                rep.value = val;
                rep.witness = {S, S.front()};
            }
        }
        return rep;
    }
    if (method != "peel")
        throw ConfigError("max_avg_affectance: unknown method " + method);
    std::vector<int> S(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) S[static_cast<std::size_t>(i)] = i;
    while (!S.empty()) {
        const double val = internal(S) / static_cast<double>(S.size());
        if (!rep.witness || val > rep.value) {
            rep.value = val;
            rep.witness = {S, S.front()};
        }
        std::size_t worst = 0;
        double lo = 0.0;
        for (std::size_t i = 0; i < S.size(); ++i) {
            const double b = aggregate(A, AffKind::B, AffDir::ToSet, S, S[i]);
            if (i == 0 || b < lo) {
                lo = b;
                worst = i;
            }
        }
        S.erase(S.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    return rep;
}

// Max out-affectance ahat_v(S) over P_p-feasible subsets S, with v ranging
// over the instance's links plus (in the euclidean metric) a deterministic
// probe grid of synthetic links.
inline MeasureReport max_out_affectance(const Instance& inst, double p, int max_n = 14) {
    const int n = static_cast<int>(inst.size());
    MeasureReport rep;
    rep.digest = instance_digest(inst);
    rep.method = "exact";
    if (n == 0) return rep;
    if (n > oracle_cap(max_n))
        throw SizeLimitError("max_out_affectance: size " + std::to_string(n) +
                             " exceeds cap " + std::to_string(oracle_cap(max_n)));

    const SinrParams& prm = inst.params();
    const ObliviousPower P = non_weak_scale(inst, p);
    double lmin = inst.length(0), lmax = inst.length(0);
    for (int v = 1; v < n; ++v) {
        lmin = std::min(lmin, inst.length(v));
        lmax = std::max(lmax, inst.length(v));
    }

    // out-affectance rows: instance links first, then probes
    std::vector<std::vector<double>> ahat_row;
    AffectanceMatrix A(inst, P);
    for (int v = 0; v < n; ++v) {
        std::vector<double> row(static_cast<std::size_t>(n), 0.0);
        for (int w = 0; w < n; ++w) row[static_cast<std::size_t>(w)] = A.a_hat(v, w);
        ahat_row.push_back(std::move(row));
    }
    std::vector<int> row_id(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) row_id[static_cast<std::size_t>(v)] = v;

    if (inst.metric().kind() == MetricSpace::Kind::Euclidean2D) {
        double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
        bool first = true;
        for (const Link& l : inst.links())
            for (std::size_t pt : {l.sender, l.receiver}) {
                const Point& q = inst.metric().point(pt);
                if (first) {
                    xlo = xhi = q.x;
                    ylo = yhi = q.y;
                    first = false;
                } else {
                    xlo = std::min(xlo, q.x);
                    xhi = std::max(xhi, q.x);
                    ylo = std::min(ylo, q.y);
                    yhi = std::max(yhi, q.y);
                }
            }
        constexpr int kGrid = 4, kLens = 5;
        for (int gx = 0; gx < kGrid; ++gx)
            for (int gy = 0; gy < kGrid; ++gy)
                for (int gl = 0; gl < kLens; ++gl) {
                    const Point s{xlo + (xhi - xlo) * (gx + 0.5) / kGrid,
                                  ylo + (yhi - ylo) * (gy + 0.5) / kGrid};
                    const double len =
                        lmin *
                        std::pow(4.0 * lmax / lmin, gl / static_cast<double>(kLens - 1));
                    const double pv =
                        P.scale * std::pow(len, P.p * prm.alpha);
                    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
                    for (int w = 0; w < n; ++w) {
                        // probes count strictly longer targets only
                        if (!(inst.length(w) > len)) continue;
                        const double cw = c_factor(inst, P, w);
                        const Point& rw = inst.metric().point(inst.link(w).receiver);
                        const double dvw = euclid(s, rw);
                        const double raw =
                            dvw == 0.0 ? 1.0
                                       : cw * (pv / power_of(P, inst, w)) *
                                             std::pow(inst.length(w) / dvw, prm.alpha);
                        row[static_cast<std::size_t>(w)] = std::min(1.0, raw);
                    }
                    ahat_row.push_back(std::move(row));
                    row_id.push_back(-1);
                }
    }

    const auto feas = detail::feasible_masks(inst, PowerMode::oblivious(p));
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        if (!feas[mask]) continue;
        const auto S = detail::mask_to_ids(mask, n);
        for (std::size_t r = 0; r < ahat_row.size(); ++r) {
            double total = 0.0;
            for (int w : S) total += ahat_row[r][static_cast<std::size_t>(w)];
            if (!rep.witness || total > rep.value) {
                rep.value = total;
                rep.witness = {S, row_id[r]};
            }
        }
    }
    return rep;
}

struct GeometryReport {
    double max_ratio_geom1 = 0.0;  // d_wu / (6 d_wv), should stay <= 1
    double max_ratio_geom2 = 0.0;  // d_wu / (6 d_vw)
    bool ok = true;
};

// Factor-6 closest-link inequalities on a 2-independent nearly-equilength set.
inline GeometryReport validate_geometry(const Instance& inst, const std::vector<int>& S,
                                        int v) {
    if (S.empty()) throw PreconditionError("validate_geometry: empty set");
    double lo = inst.length(S.front()), hi = lo;
    for (int w : S) {
        lo = std::min(lo, inst.length(w));
        hi = std::max(hi, inst.length(w));
    }
    if (hi > 2.0 * lo)
        throw PreconditionError("validate_geometry: S is not nearly-equilength");
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j)
            if (!q_independent(inst, S[i], S[j], 2.0))
                throw PreconditionError("validate_geometry: S is not 2-independent");

    GeometryReport rep;
    // d_uv = d(s_u, r_v) minimal
    int u1 = S.front();
    for (int w : S)
        if (inst.cross_dist(w, v) < inst.cross_dist(u1, v)) u1 = w;
    // d_vu = d(s_v, r_u) minimal
    int u2 = S.front();
    for (int w : S)
        if (inst.cross_dist(v, w) < inst.cross_dist(v, u2)) u2 = w;
    // w = u is outside both claims (the 2-independence step needs w != u)
    for (int w : S) {
        if (w != u1) {
            const double dwu1 =
                inst.metric().distance(inst.link(w).sender, inst.link(u1).receiver);
            const double dwv = inst.cross_dist(w, v);
            if (dwv > 0)
                rep.max_ratio_geom1 = std::max(rep.max_ratio_geom1, dwu1 / (6.0 * dwv));
            else if (dwu1 > 0)
                rep.ok = false;
        }
        if (w != u2) {
            const double dwu2 =
                inst.metric().distance(inst.link(w).sender, inst.link(u2).receiver);
            const double dvw = inst.cross_dist(v, w);
            if (dvw > 0)
                rep.max_ratio_geom2 = std::max(rep.max_ratio_geom2, dwu2 / (6.0 * dvw));
            else if (dwu2 > 0)
                rep.ok = false;
        }
    }
    if (rep.max_ratio_geom1 > 1.0 + 1e-9 || rep.max_ratio_geom2 > 1.0 + 1e-9)
        rep.ok = false;
    return rep;
}

struct LemmaReport {
    int lld_samples = 0, lld_violations = 0, lld_max_size = 0;
    double lld_bound = 0.0;
    int affequi_samples = 0;
    double affequi_c = 0.0;  // empirical constant: max residual * q
    int l3_samples = 0, l3_violations = 0, l3_max_count = 0;
    double l3_bound = 0.0;
    int skipped = 0;
};

// Falsification harness for the long-link counting, length-class affectance
// and ball-counting structure. Searches sampled configurations for
// counterexamples; reports empirical constants, proves nothing.
inline LemmaReport validate_interference_lemmas(const Instance& inst, double p, double tau,
                                                int trials = 20, std::uint64_t seed = 0) {
    if (!(p > 0 && p < 1))
        throw PreconditionError("validate_interference_lemmas: need 0 < p < 1");
    if (!(tau >= 1)) throw PreconditionError("validate_interference_lemmas: need tau >= 1");
    LemmaReport rep;
    const int n = static_cast<int>(inst.size());
    if (n == 0) return rep;
    const SinrParams& prm = inst.params();
    const double p_hat = 1.0 / std::min(p, 1.0 - p);
    const double lambda =
        std::pow(4.0 * std::pow(2.0 * prm.beta * tau, 1.0 / prm.alpha), p_hat);
    const PowerAssignment P = non_weak_scale(inst, p);
    AffectanceMatrix A(inst, P);
    const double big_delta = delta(inst);
    const double log2d = std::log2(big_delta);
    rep.lld_bound =
        log2d > 1.0 ? 2.0 + std::log(log2d) / std::log(1.0 / p) +
                          std::log(log2d) / std::log(1.0 / (1.0 - p))
                    : 2.0;
    rep.l3_bound = 2.0 * std::pow(4.0, prm.alpha) + 1.0;

    auto two_independent_greedy = [&](std::vector<int> cand) {
        std::vector<int> Q;
        for (int w : cand) {
            bool ok = true;
            for (int u : Q)
                if (!q_independent(inst, u, w, 2.0)) {
                    ok = false;
                    break;
                }
            if (ok) Q.push_back(w);
        }
        return Q;
    };

    // long close links around each anchor
    for (int v = 0; v < n; ++v) {
        std::vector<int> cand;
        for (int w = 0; w < n; ++w) {
            if (w == v || inst.length(w) < lambda * inst.length(v)) continue;
            if (std::max(A.at(v, w), A.at(w, v)) >= 1.0 / tau) cand.push_back(w);
        }
        std::sort(cand.begin(), cand.end(),
                  [&](int a, int b) { return inst.shorter(a, b); });
        const auto Q = two_independent_greedy(cand);
        if (Q.empty()) {
            ++rep.skipped;
            continue;
        }
        ++rep.lld_samples;
        rep.lld_max_size = std::max(rep.lld_max_size, static_cast<int>(Q.size()));
        if (static_cast<double>(Q.size()) > rep.lld_bound) ++rep.lld_violations;
    }

    std::mt19937_64 rng(seed);
    const double len_gate = std::pow(tau, p_hat / prm.alpha);
    for (int t = 0; t < trials; ++t) {
        const auto F = detail::random_maximal_feasible(inst, PowerMode::oblivious(p), rng);
        if (F.empty()) {
            ++rep.skipped;
            continue;
        }
        // per-length-class residual against the best pair
        std::vector<std::vector<int>> classes;
        {
            // bucket the feasible set by factor-2 length boundaries
            double flo = inst.length(F.front());
            for (int w : F) flo = std::min(flo, inst.length(w));
            std::vector<std::vector<int>> buckets;
            for (int w : F) {
                int i = static_cast<int>(std::floor(std::log2(inst.length(w) / flo)));
                i = std::max(i, 0);
                if (buckets.size() <= static_cast<std::size_t>(i))
                    buckets.resize(static_cast<std::size_t>(i) + 1);
                buckets[static_cast<std::size_t>(i)].push_back(w);
            }
            classes = std::move(buckets);
        }
        for (const auto& cls : classes) {
            if (cls.size() < 2) continue;
            const auto S2 = two_independent_greedy(cls);
            if (S2.size() < 2) continue;
            double cls_min = inst.length(S2.front());
            for (int w : S2) cls_min = std::min(cls_min, inst.length(w));
            for (int v = 0; v < n; ++v) {
                if (std::find(S2.begin(), S2.end(), v) != S2.end()) continue;
                if (cls_min < len_gate * inst.length(v)) continue;
                const double total = aggregate(A, AffKind::B, AffDir::ToSet, S2, v);
                double best_pair = 0.0;
                for (std::size_t i = 0; i < S2.size(); ++i)
                    for (std::size_t j = i + 1; j < S2.size(); ++j)
                        best_pair = std::max(best_pair, A.b(v, S2[i]) + A.b(v, S2[j]));
                ++rep.affequi_samples;
                rep.affequi_c = std::max(rep.affequi_c, (total - best_pair) * tau);
            }
        }
        // ball construction around each outside link
        for (int v = 0; v < n; ++v) {
            if (std::find(F.begin(), F.end(), v) != F.end()) continue;
            double D = -1.0;
            for (int w : F) {
                const double d = inst.metric().distance(inst.link(v).sender,
                                                        inst.link(w).sender);
                if (D < 0 || d < D) D = d;
            }
            if (!(D > 0)) {
                ++rep.skipped;
                continue;
            }
            int count = 0;
            for (int u : F)
                if (inst.metric().distance(inst.link(v).sender, inst.link(u).receiver) <=
                    D / 2.0)
                    ++count;
            ++rep.l3_samples;
            rep.l3_max_count = std::max(rep.l3_max_count, count);
            if (static_cast<double>(count) > rep.l3_bound) ++rep.l3_violations;
        }
    }
    return rep;
}

}  // namespace sinr
