#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sinr/sinr.hpp"

using namespace sinr;

TEST_CASE("q_independent predicate") {
    // cross-distance product 100, lengths 1 each
    std::vector<Point> pts = {{0, 0}, {1, 0}, {10, 0}, {11, 0}};
    Instance inst(MetricSpace::euclidean(pts), {{0, 0, 1}, {1, 2, 3}}, SinrParams{});
    CHECK(inst.cross_dist(0, 1) * inst.cross_dist(1, 0) == doctest::Approx(99.0));
    CHECK(q_independent(inst, 0, 1, 2.0));   // 99 >= 4
    CHECK_FALSE(q_independent(inst, 0, 1, 10.0));

    std::vector<Point> co = {{0, 0}, {1, 0}};
    Instance colocated(MetricSpace::euclidean(co), {{0, 0, 1}, {1, 0, 1}}, SinrParams{});
    CHECK_FALSE(q_independent(colocated, 0, 1, 2.0));  // product = l^2

    CHECK_THROWS_AS(q_independent(inst, 0, 0, 2.0), PreconditionError);
}

TEST_CASE("q_independent matches the formula on random pairs") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = oracle::random_instance(seed, 10);
        for (int t = 0; t < 100; ++t) {
            const int v = static_cast<int>(rng() % 10);
            const int w = static_cast<int>(rng() % 10);
            if (v == w) continue;
            const double q = 0.5 + static_cast<double>(rng() % 40) / 10.0;
            const bool want = inst.cross_dist(v, w) * inst.cross_dist(w, v) >=
                              q * q * inst.length(v) * inst.length(w);
            CHECK(q_independent(inst, v, w, q) == want);
        }
    }
}

TEST_CASE("partition: singleton and already-independent sets") {
    auto inst = oracle::random_instance(1, 6, 16.0, 200.0);
    PowerAssignment P = non_weak_scale(inst, 0.5);
    auto part = partition_q_independent(inst, {2}, 2.0, P);
    REQUIRE(part.classes.size() == 1);
    CHECK(part.classes[0] == std::vector<int>{2});

    auto empty = partition_q_independent(inst, {}, 2.0, P);
    CHECK(empty.classes.empty());
}

TEST_CASE("partition bound and class independence over brute-force feasible sets") {
    const double qs[] = {1.0, 2.0, 4.0};
    int sets_checked = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto inst = oracle::random_instance(seed, 10, 16.0, 60.0);
        const auto& prm = inst.params();
        PowerAssignment P = non_weak_scale(inst, 0.5);
        std::mt19937_64 rng(seed);
        for (int t = 0; t < 40; ++t) {
            std::vector<int> S;
            for (int v = 0; v < 10; ++v)
                if (rng() & 1u) S.push_back(v);
            if (S.empty() || !is_feasible(inst, P, S)) continue;
            ++sets_checked;
            for (double q : qs) {
                auto part = partition_q_independent(inst, S, q, P);
                const auto bound = static_cast<std::size_t>(
                                       std::floor(2.0 * std::pow(q, prm.alpha) / prm.beta)) +
                                   1;
                CHECK(part.classes.size() <= bound);
                std::vector<int> covered;
                for (const auto& cls : part.classes) {
                    for (std::size_t i = 0; i < cls.size(); ++i)
                        for (std::size_t j = i + 1; j < cls.size(); ++j)
                            CHECK(q_independent(inst, cls[i], cls[j], q));
                    covered.insert(covered.end(), cls.begin(), cls.end());
                }
                std::sort(covered.begin(), covered.end());
                CHECK(covered == S);
            }
        }
    }
    CHECK(sets_checked > 30);
}

TEST_CASE("partition works with pc witness powers") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto inst = oracle::random_instance(seed, 8, 16.0, 60.0);
        auto best = brute_opt(inst, PowerMode::pc(), 8);
        if (best.size() < 2) continue;
        auto r = pc_solve(inst, best);
        REQUIRE(r.feasible);
        auto P = expand_powers(inst, best, *r.min_powers, 1e-6);
        auto part = partition_q_independent(inst, best, 2.0, P);
        std::size_t total = 0;
        for (const auto& cls : part.classes) total += cls.size();
        CHECK(total == best.size());
    }
}

TEST_CASE("partition rejects sets far from feasible") {
    // many co-located identical links: every pairwise b = 2, so the minimum
    // symmetric load is 2(k-1) > 2
    std::vector<Point> pts = {{0, 0}, {1, 0}};
    std::vector<Link> links;
    for (int i = 0; i < 6; ++i) links.push_back({i, 0, 1});
    Instance inst(MetricSpace::euclidean(pts), links, {3.0, 2.0, 0.0});
    std::vector<int> all = {0, 1, 2, 3, 4, 5};
    CHECK_THROWS_AS(partition_q_independent(inst, all, 2.0, ObliviousPower{0.5, 1.0}),
                    PreconditionError);
}
