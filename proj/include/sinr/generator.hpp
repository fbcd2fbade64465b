#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sinr/model.hpp"

namespace sinr {

struct GenConfig {
    int n = 10;
    double world_size = 100.0;
    double target_delta = 16.0;
    double length_min = 1.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1) throw ConfigError("generate: n must be >= 1");
        if (!(world_size > 0)) throw ConfigError("generate: world_size must be > 0");
        if (!(target_delta >= 1)) throw ConfigError("generate: target_delta must be >= 1");
        if (!(length_min > 0)) throw ConfigError("generate: length_min must be > 0");
    }
};

namespace detail {
// mt19937_64-backed uniform in [0,1). std::uniform_real_distribution is
// implementation-defined, so draw bits directly to keep output stable.
class UnitRng {
public:
    explicit UnitRng(std::uint64_t seed) : eng_(seed) {}
    double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};
}  // namespace detail

// Senders uniform in [0,world]^2, lengths log-uniform in
// [length_min, length_min*target_delta], receiver at a uniform random angle.
// Pure function of (config, params).
inline Instance generate(const GenConfig& cfg, const SinrParams& params) {
    cfg.validate();
    detail::UnitRng rng(cfg.seed);
    std::vector<Point> pts;
    std::vector<Link> links;
    pts.reserve(static_cast<std::size_t>(cfg.n) * 2);
    links.reserve(static_cast<std::size_t>(cfg.n));
    const double log_delta = std::log(cfg.target_delta);
    for (int i = 0; i < cfg.n; ++i) {
        const double sx = rng.next() * cfg.world_size;
        const double sy = rng.next() * cfg.world_size;
        const double len = cfg.length_min * std::exp(rng.next() * log_delta);
        const double angle = rng.next() * 2.0 * M_PI;
        pts.push_back({sx, sy});
        pts.push_back({sx + len * std::cos(angle), sy + len * std::sin(angle)});
        links.push_back({i, pts.size() - 2, pts.size() - 1});
    }
    return Instance(MetricSpace::euclidean(std::move(pts)), std::move(links), params);
}

}  // namespace sinr
