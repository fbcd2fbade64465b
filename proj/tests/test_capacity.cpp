#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sinr/sinr.hpp"

using namespace sinr;

namespace {

Instance far_links(int k, double spread = 1e6) {
    std::vector<Point> pts;
    std::vector<Link> links;
    for (int i = 0; i < k; ++i) {
        pts.push_back({static_cast<double>(i) * spread, 0.0});
        pts.push_back({static_cast<double>(i) * spread + 1.0, 0.0});
        links.push_back({i, static_cast<std::size_t>(2 * i),
                         static_cast<std::size_t>(2 * i + 1)});
    }
    return Instance(MetricSpace::euclidean(pts), links, {3.0, 2.0, 1.0});
}

Instance colocated_links(int k, double noise = 0.0) {
    std::vector<Point> pts = {{0, 0}, {1, 0}};
    std::vector<Link> links;
    for (int i = 0; i < k; ++i) links.push_back({i, 0, 1});
    return Instance(MetricSpace::euclidean(pts), links, {3.0, 2.0, noise});
}

void check_gr_chain(const Instance& inst, const GrTrace& t) {
    // affectances under the trace's assignment, restricted to processed links
    PowerAssignment P = t.assignment;
    const auto& R = t.accepted_R;
    // rejected links keep b-hat >= 1/2 against the final R
    for (std::size_t i = 0; i < t.processed.size(); ++i) {
        if (t.accepted[i]) continue;
        const int v = t.processed[i];
        double b = 0.0;
        for (int w : R)
            if (inst.shorter(w, v))
                b += affectance(inst, P, w, v) + affectance(inst, P, v, w);
        CHECK(b >= 0.5 - 1e-12);
    }
    // total in-affectance of R at most |R|/2
    double total = 0.0;
    for (int v : R)
        for (int w : R) total += affectance(inst, P, w, v);
    CHECK(total <= static_cast<double>(R.size()) / 2.0 + 1e-9);
    // at least half of R survives, and X has unit in-affectance, also within X
    CHECK(t.final_X.size() * 2 >= R.size());
    for (int v : t.final_X) {
        double in_r = 0.0, in_x = 0.0;
        for (int w : R) in_r += affectance(inst, P, w, v);
        for (int w : t.final_X) in_x += affectance(inst, P, w, v);
        CHECK(in_r <= 1.0 + 1e-9);
        CHECK(in_x <= 1.0 + 1e-9);
    }
}

}  // namespace

TEST_CASE("gr on far-apart links keeps everything") {
    auto inst = far_links(6);
    auto t = gr(inst, 0.5);
    CHECK(t.accepted_R.size() == 6);
    CHECK(t.final_X.size() == 6);
    check_gr_chain(inst, t);
}

TEST_CASE("gr on co-located identical links keeps exactly one") {
    auto inst = colocated_links(5);
    auto t = gr(inst, 0.5);
    REQUIRE(t.accepted_R.size() == 1);
    CHECK(t.accepted_R[0] == 0);  // ties broken by id
    CHECK(t.final_X == std::vector<int>{0});
    check_gr_chain(inst, t);
}

TEST_CASE("gr invariant chain on random instances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto inst = oracle::random_instance(seed, 14, 64.0, 40.0);
        for (double p : {0.25, 0.5, 0.75}) {
            auto t = gr(inst, p);
            check_gr_chain(inst, t);
        }
    }
}

TEST_CASE("brute_opt basics") {
    auto single = far_links(1);
    CHECK(brute_opt(single, PowerMode::oblivious(0.5)) == std::vector<int>{0});

    auto pair = colocated_links(2, 1.0);
    CHECK(brute_opt(pair, PowerMode::oblivious(0.5)).size() == 1);
    CHECK(brute_opt(pair, PowerMode::pc()).size() == 1);

    auto big = far_links(2);
    CHECK_THROWS_AS(brute_opt(big, PowerMode::oblivious(0.5), 1), SizeLimitError);
}

TEST_CASE("brute_opt cross-validated against a recursive enumerator") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto inst = oracle::random_instance(seed, 9, 16.0, 50.0);
        for (auto mode : {PowerMode::oblivious(0.5), PowerMode::pc()}) {
            auto best = brute_opt(inst, mode);
            CHECK(best.size() == oracle::max_feasible_recursive(inst, mode));
        }
    }
}

TEST_CASE("oblivious optimum never beats the pc optimum") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = oracle::random_instance(seed, 10, 16.0, 50.0);
        for (double p : {0.0, 0.5, 1.0})
            CHECK(brute_opt(inst, PowerMode::oblivious(p)).size() <=
                  brute_opt(inst, PowerMode::pc()).size());
    }
}

TEST_CASE("capacity approximation against the exact measure") {
    // |OPT_pc| <= 2*(2*I+1)*|X| with the exact pc-mode measure
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = oracle::random_instance(seed, 10, 64.0, 40.0);
        for (double p : {0.25, 0.5, 0.75}) {
            const auto x = gr(inst, p).final_X;
            const auto opt = brute_opt(inst, PowerMode::pc());
            const auto rep = inductive_independence(inst, p, PowerMode::pc());
            CHECK(static_cast<double>(opt.size()) <=
                  2.0 * (2.0 * rep.value + 1.0) * static_cast<double>(x.size()) + 1e-9);
        }
    }
}

TEST_CASE("schedule_gr structure") {
    auto far = far_links(5);
    auto s1 = schedule_gr(far, 0.5);
    CHECK(s1.slots.size() == 1);

    auto co = colocated_links(4, 1.0);
    auto s2 = schedule_gr(co, 0.5);
    CHECK(s2.slots.size() == 4);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = oracle::random_instance(seed, 12, 16.0, 40.0);
        auto s = schedule_gr(inst, 0.5);
        std::vector<int> all;
        for (std::size_t i = 0; i < s.slots.size(); ++i) {
            all.insert(all.end(), s.slots[i].begin(), s.slots[i].end());
            // each slot has bounded truncated in-affectance under its assignment
            PowerAssignment P = s.assignments[i];
            for (int v : s.slots[i]) {
                double in_aff = 0.0;
                for (int w : s.slots[i]) in_aff += affectance(inst, P, w, v);
                CHECK(in_aff <= 1.0 + 1e-9);
            }
        }
        std::sort(all.begin(), all.end());
        std::vector<int> want(inst.size());
        std::iota(want.begin(), want.end(), 0);
        CHECK(all == want);
    }
}

TEST_CASE("brute_min_schedule") {
    CHECK(brute_min_schedule(far_links(5), PowerMode::oblivious(0.5)) == 1);
    CHECK(brute_min_schedule(colocated_links(4, 1.0), PowerMode::oblivious(0.5)) == 4);

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto inst = oracle::random_instance(seed, 8, 16.0, 30.0);
        for (auto mode : {PowerMode::oblivious(0.5), PowerMode::pc()})
            CHECK(brute_min_schedule(inst, mode) ==
                  oracle::min_schedule_recursive(inst, mode));
    }
}

TEST_CASE("schedule_gr never beats the exact minimum schedule") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto inst = oracle::random_instance(seed, 10, 16.0, 40.0);
        const auto s = schedule_gr(inst, 0.5);
        const int chi = brute_min_schedule(inst, PowerMode::oblivious(0.5));
        CHECK(static_cast<int>(s.slots.size()) >= chi);
    }
}
