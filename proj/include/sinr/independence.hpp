#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sinr/affectance.hpp"
#include "sinr/model.hpp"

namespace sinr {

// d_vw * d_wv >= q^2 * l_v * l_w, with d_vw = d(s_v, r_w).
inline bool q_independent(const Instance& inst, int v, int w, double q) {
    if (v == w || !(q > 0)) throw PreconditionError("q_independent: need v != w, q > 0");
    return inst.cross_dist(v, w) * inst.cross_dist(w, v) >=
           q * q * inst.length(v) * inst.length(w);
}

struct IndependencePartition {
    double q = 1.0;
    std::vector<std::vector<int>> classes;
    std::vector<int> order;  // the Z-inductive extraction order
};

// Constructive partition of a P-feasible set into at most
// floor(2*q^alpha/beta) + 1 q-independent classes. Heavy edges are pairs
// with b_v(w) >= beta/q^alpha; the extraction order repeatedly removes the
// link with minimum symmetric affectance into the remainder (feasibility
// guarantees some link has at most 2), and a reverse-order greedy coloring
// with Z+1 colors finishes the job.
inline IndependencePartition partition_q_independent(const Instance& inst,
                                                     const std::vector<int>& S, double q,
                                                     const PowerAssignment& P) {
    if (!(q > 0)) throw PreconditionError("partition: q must be > 0");
    const SinrParams& prm = inst.params();
    const int Z = static_cast<int>(std::floor(2.0 * std::pow(q, prm.alpha) / prm.beta));
    const double heavy = prm.beta / std::pow(q, prm.alpha);

    IndependencePartition part;
    part.q = q;
    if (S.empty()) return part;

    const std::size_t k = S.size();
    // pairwise only within S; links outside S may not be non-weak under P
    std::vector<std::vector<double>> b(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const double sym =
                affectance(inst, P, S[i], S[j]) + affectance(inst, P, S[j], S[i]);
            b[i][j] = sym;
            b[j][i] = sym;
        }

    std::vector<bool> remaining(k, true);
    std::vector<double> load(k, 0.0);  // b into the remaining set
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) load[i] += b[i][j];

    std::vector<std::size_t> order;
    for (std::size_t step = 0; step < k; ++step) {
        std::size_t best = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (!remaining[i]) continue;
            if (best == k || load[i] < load[best] ||
                (load[i] == load[best] && S[i] < S[best]))
                best = i;
        }
        if (load[best] > 2.0 + 1e-9)
            throw PreconditionError(
                "extraction bound violated (min symmetric affectance " +
                std::to_string(load[best]) + " > 2); S is not feasible under P");
        order.push_back(best);
        remaining[best] = false;
        for (std::size_t i = 0; i < k; ++i)
            if (remaining[i]) load[i] -= b[i][best];
    }

    // Color in reverse extraction order; each vertex sees at most Z colored
    // heavy neighbors.
    std::vector<int> color(k, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t i = *it;
        std::vector<bool> used(static_cast<std::size_t>(Z) + 1, false);
        for (std::size_t j = 0; j < k; ++j)
            if (j != i && color[j] >= 0 && b[i][j] >= heavy) {
                if (color[j] > Z)
                    throw NumericalError("coloring overflow in q-independence partition");
                used[static_cast<std::size_t>(color[j])] = true;
            }
        int c = 0;
        while (c <= Z && used[static_cast<std::size_t>(c)]) ++c;
        if (c > Z)
            throw PreconditionError(
                "more than Z+1 colors needed; S is not feasible under P");
        color[i] = c;
    }

    part.classes.assign(static_cast<std::size_t>(Z) + 1, {});
    for (std::size_t i = 0; i < k; ++i)
        part.classes[static_cast<std::size_t>(color[i])].push_back(S[i]);
    std::erase_if(part.classes, [](const auto& c) { return c.empty(); });
    for (auto& cls : part.classes) std::sort(cls.begin(), cls.end());

    for (const auto& cls : part.classes)
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j)
                if (!q_independent(inst, cls[i], cls[j], q))
                    throw PreconditionError(
                        "constructed class is not q-independent; S is not feasible "
                        "under P");

    part.order.reserve(k);
    for (std::size_t i : order) part.order.push_back(S[i]);
    return part;
}

}  // namespace sinr
