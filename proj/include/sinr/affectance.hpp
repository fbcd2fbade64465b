#pragma once

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "sinr/model.hpp"

namespace sinr {

// Oblivious family: P_v = scale * l_v^(p*alpha).
struct ObliviousPower {
    double p = 0.5;
    double scale = 1.0;
};

struct ExplicitPower {
    std::vector<double> powers;  // indexed by link id
};

using PowerAssignment = std::variant<ObliviousPower, ExplicitPower>;

inline double power_of(const PowerAssignment& P, const Instance& inst, int v) {
    if (const auto* ob = std::get_if<ObliviousPower>(&P))
        return ob->scale * std::pow(inst.length(v), ob->p * inst.params().alpha);
    const auto& powers = std::get<ExplicitPower>(P).powers;
    return powers.at(static_cast<std::size_t>(v));
}

// c_v = beta / (1 - beta*N*l_v^alpha / P_v). Requires the link to overcome
// noise on its own: P_v > beta*N*l_v^alpha.
inline double c_factor(const Instance& inst, const PowerAssignment& P, int v) {
    const SinrParams& prm = inst.params();
    const double pv = power_of(P, inst, v);
    const double noise_min = prm.beta * prm.noise * std::pow(inst.length(v), prm.alpha);
    if (!(pv > noise_min))
        throw NoiseDominatedError(v, "link " + std::to_string(v) +
                                         " cannot overcome ambient noise alone");
    return prm.beta / (1.0 - noise_min / pv);
}

// Truncated affectance of l_w on l_v. Zero on the diagonal; a zero
// cross-distance between distinct links yields 1 (the truncation cap).
inline double affectance(const Instance& inst, const PowerAssignment& P, int w, int v) {
    if (w == v) return 0.0;
    const double cv = c_factor(inst, P, v);
    const double dwv = inst.cross_dist(w, v);
    if (dwv == 0.0) return 1.0;
    const double ratio = power_of(P, inst, w) / power_of(P, inst, v);
    const double raw =
        cv * ratio * std::pow(inst.length(v) / dwv, inst.params().alpha);
    return std::min(1.0, raw);
}

// Cached pairwise affectances: at(w, v) = a_w(v).
class AffectanceMatrix {
public:
    AffectanceMatrix(const Instance& inst, const PowerAssignment& P)
        : inst_(&inst), n_(inst.size()), data_(n_ * n_, 0.0) {
        for (std::size_t w = 0; w < n_; ++w)
            for (std::size_t v = 0; v < n_; ++v)
                if (w != v)
                    data_[w * n_ + v] = affectance(inst, P, static_cast<int>(w),
                                                  static_cast<int>(v));
    }

    double at(int w, int v) const {
        return data_[static_cast<std::size_t>(w) * n_ + static_cast<std::size_t>(v)];
    }

    std::size_t size() const { return n_; }
    const Instance& instance() const { return *inst_; }

    // b_v(w) = a_v(w) + a_w(v)
    double b(int v, int w) const { return at(v, w) + at(w, v); }

    // length-ordered variants; zero unless v precedes w in the (length, id) order
    double a_hat(int v, int w) const {
        return inst_->shorter(v, w) ? at(v, w) : 0.0;
    }
    double b_hat(int v, int w) const {
        return inst_->shorter(v, w) ? b(v, w) : 0.0;
    }

private:
    const Instance* inst_;
    std::size_t n_;
    std::vector<double> data_;
};

enum class AffKind { A, B, AHat, BHat };
enum class AffDir { FromSet, ToSet };  // a_S(v) vs a_v(S)

// Aggregate affectance between a link and a set, summed in ascending link id.
inline double aggregate(const AffectanceMatrix& A, AffKind kind, AffDir dir,
                        const std::vector<int>& S, int v) {
    double total = 0.0;
    for (int w : S) {
        switch (kind) {
            case AffKind::A:
                total += dir == AffDir::FromSet ? A.at(w, v) : A.at(v, w);
                break;
            case AffKind::B:
                total += A.b(v, w);
                break;
            case AffKind::AHat:
                total += dir == AffDir::FromSet ? A.a_hat(w, v) : A.a_hat(v, w);
                break;
            case AffKind::BHat:
                total += dir == AffDir::FromSet ? A.b_hat(w, v) : A.b_hat(v, w);
                break;
        }
    }
    return total;
}

// Ground-truth feasibility: raw SINR threshold per link, untruncated.
inline bool is_feasible(const Instance& inst, const PowerAssignment& P,
                        const std::vector<int>& S) {
    const SinrParams& prm = inst.params();
    for (int v : S) {
        const double signal = power_of(P, inst, v) / std::pow(inst.length(v), prm.alpha);
        double interference = prm.noise;
        bool degenerate = false;
        for (int w : S) {
            if (w == v) continue;
            const double dwv = inst.cross_dist(w, v);
            if (dwv == 0.0) {
                degenerate = true;
                break;
            }
            interference += power_of(P, inst, w) / std::pow(dwv, prm.alpha);
        }
        if (degenerate || signal < prm.beta * interference) return false;
    }
    return true;
}

// Smallest oblivious scale making every link non-weak (c_v <= 2*beta):
// P_v >= 2*beta*N*l_v^alpha for all v. Scale 1 suffices when N = 0.
inline ObliviousPower non_weak_scale(const Instance& inst, double p) {
    const SinrParams& prm = inst.params();
    if (prm.noise == 0.0 || inst.size() == 0) return {p, 1.0};
    double lmax = inst.length(0);
    for (std::size_t v = 1; v < inst.size(); ++v)
        lmax = std::max(lmax, inst.length(static_cast<int>(v)));
    return {p, 2.0 * prm.beta * prm.noise * std::pow(lmax, (1.0 - p) * prm.alpha)};
}

}  // namespace sinr
