#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "sinr/affectance.hpp"
#include "sinr/model.hpp"

namespace sinr {

// The SINR threshold condition rearranged as P >= M*P + u, elementwise over
// the links of S
// (positions in ascending id order): M[v][w] = beta*l_v^alpha/d_wv^alpha,
// u_v = beta*N*l_v^alpha.
struct GainMatrix {
    std::vector<std::vector<double>> m;
    std::vector<double> noise_term;
    std::vector<int> ids;  // position -> link id
};

inline GainMatrix gain_matrix(const Instance& inst, std::vector<int> S) {
    if (S.empty()) throw ConfigError("gain_matrix of an empty set");
    std::sort(S.begin(), S.end());
    const std::size_t k = S.size();
    const SinrParams& prm = inst.params();
    GainMatrix g;
    g.ids = S;
    g.m.assign(k, std::vector<double>(k, 0.0));
    g.noise_term.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double lva = std::pow(inst.length(S[i]), prm.alpha);
        g.noise_term[i] = prm.beta * prm.noise * lva;
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            const double d = inst.cross_dist(S[j], S[i]);
            if (d == 0.0)
                throw DegenerateGeometryError(
                    "zero cross-distance between links " + std::to_string(S[j]) + " and " +
                    std::to_string(S[i]) + "; no power assignment can help");
            g.m[i][j] = prm.beta * lva / std::pow(d, prm.alpha);
        }
    }
    return g;
}

struct SpectralResult {
    double value = 0.0;
    int iterations = 0;
};

// Power iteration with deterministic all-ones start. Iterates on M + I to
// avoid the period-2 stall of bipartite-structured matrices; rho(M+I) =
// rho(M) + 1 for nonnegative M.
inline SpectralResult spectral_radius_iter(const std::vector<std::vector<double>>& m,
                                           double tol) {
    if (!(tol > 0)) throw ConfigError("spectral_radius: tol must be > 0");
    const std::size_t n = m.size();
    if (n <= 1) return {0.0, 0};
    if (n == 2) {
        // closed form; iteration converges too slowly for an accurate value
        // when the off-diagonal entries are far apart in magnitude
        const double a = m[0][0], d = m[1][1];
        const double disc = std::sqrt((a - d) * (a - d) + 4.0 * m[0][1] * m[1][0]);
        return {(a + d + disc) / 2.0, 0};
    }
    constexpr int kMaxIter = 100000;
    std::vector<double> x(n, 1.0), y(n);
    double lambda = 0.0;
    for (int it = 1; it <= kMaxIter; ++it) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = x[i];  // shifted: (M + I) x
            for (std::size_t j = 0; j < n; ++j) s += m[i][j] * x[j];
            y[i] = s;
            norm = std::max(norm, s);
        }
        const double next = norm - 1.0;
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (std::abs(next - lambda) < tol * std::max(1.0, std::abs(next)))
            return {next, it};
        lambda = next;
    }
    throw NumericalError("spectral radius power iteration did not converge; last iterate " +
                         std::to_string(lambda));
}

inline double spectral_radius(const std::vector<std::vector<double>>& m, double tol) {
    return spectral_radius_iter(m, tol).value;
}

struct PcResult {
    bool feasible = false;
    bool marginal = false;       // rho within tol of 1; treated as infeasible
    double spectral_radius = 0.0;
    std::optional<std::vector<double>> min_powers;  // by position in sorted S
    int iterations = 0;
};

namespace detail {
// Solve A*x = rhs by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                        std::vector<double> rhs, double pivot_tol) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < pivot_tol)
            throw NumericalError("singular system in power solve");
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
    return x;
}
}  // namespace detail

// PC-feasibility: a power assignment making S feasible exists iff
// rho(M) < 1. Minimal positive powers come from (I-M)P = u when N > 0; with
// N = 0 only ratios matter, so we return the strictly-feasible solution of
// (I-M)P = 1 scaled to minimum 1.
inline PcResult pc_solve(const Instance& inst, const std::vector<int>& S,
                         double tol = 1e-9) {
    PcResult res;
    if (S.empty()) {
        res.feasible = true;
        res.min_powers = std::vector<double>{};
        return res;
    }
    GainMatrix g;
    try {
        g = gain_matrix(inst, S);
    } catch (const DegenerateGeometryError&) {
        res.feasible = false;
        res.spectral_radius = std::numeric_limits<double>::infinity();
        return res;
    }
    const auto spec = spectral_radius_iter(g.m, tol);
    res.spectral_radius = spec.value;
    res.iterations = spec.iterations;
    if (spec.value >= 1.0 - tol) {
        res.marginal = spec.value <= 1.0 + tol;
        return res;
    }
    res.feasible = true;
    const std::size_t k = g.m.size();
    std::vector<std::vector<double>> a(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            a[i][j] = (i == j ? 1.0 : 0.0) - g.m[i][j];
    const bool zero_noise = std::all_of(g.noise_term.begin(), g.noise_term.end(),
                                        [](double u) { return u == 0.0; });
    std::vector<double> rhs =
        zero_noise ? std::vector<double>(k, 1.0) : g.noise_term;
    std::vector<double> powers = detail::solve_linear(std::move(a), std::move(rhs), tol);
    if (zero_noise) {
        const double lo = *std::min_element(powers.begin(), powers.end());
        for (double& p : powers) p /= lo;
    }
    for (double p : powers)
        if (!(p > 0.0) || !std::isfinite(p))
            throw NumericalError("nonpositive power in feasible solve");
    res.min_powers = std::move(powers);
    return res;
}

// Expand subset powers (by position in sorted S) to a full explicit
// assignment; links outside S get a placeholder power of 1.
inline ExplicitPower expand_powers(const Instance& inst, std::vector<int> S,
                                   const std::vector<double>& powers,
                                   double inflate = 0.0) {
    std::sort(S.begin(), S.end());
    ExplicitPower P{std::vector<double>(inst.size(), 1.0)};
    for (std::size_t i = 0; i < S.size(); ++i)
        P.powers[static_cast<std::size_t>(S[i])] = powers[i] * (1.0 + inflate);
    return P;
}

}  // namespace sinr
