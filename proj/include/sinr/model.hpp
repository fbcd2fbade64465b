#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sinr/errors.hpp"

namespace sinr {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

inline double euclid(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Either the plane, or an explicit distance table over point indices.
// Explicit tables are checked for symmetry, zero diagonal and the triangle
// inequality on construction.
class MetricSpace {
public:
    enum class Kind { Euclidean2D, ExplicitMatrix };

    static MetricSpace euclidean(std::vector<Point> pts) {
        MetricSpace m;
        m.kind_ = Kind::Euclidean2D;
        for (const auto& p : pts) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw ValidationError("non-finite point coordinate");
        }
        m.points_ = std::move(pts);
        return m;
    }

    static MetricSpace matrix(std::vector<std::vector<double>> d) {
        constexpr double kTol = 1e-9;
        const std::size_t k = d.size();
        for (std::size_t i = 0; i < k; ++i) {
            if (d[i].size() != k)
                throw ValidationError("distance matrix is not square");
            if (d[i][i] != 0.0)
                throw ValidationError("distance matrix has nonzero diagonal at " +
                                      std::to_string(i));
            for (std::size_t j = 0; j < k; ++j) {
                if (!std::isfinite(d[i][j]) || d[i][j] < 0.0)
                    throw ValidationError("invalid distance entry");
                if (std::abs(d[i][j] - d[j][i]) > kTol)
                    throw ValidationError("distance matrix is not symmetric at (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t l = 0; l < k; ++l)
                    if (d[i][j] > d[i][l] + d[l][j] + kTol)
                        throw ValidationError(
                            "triangle inequality violated at (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(l) + ")");
        MetricSpace m;
        m.kind_ = Kind::ExplicitMatrix;
        m.dist_ = std::move(d);
        return m;
    }

    Kind kind() const { return kind_; }

    std::size_t num_points() const {
        return kind_ == Kind::Euclidean2D ? points_.size() : dist_.size();
    }

    double distance(std::size_t a, std::size_t b) const {
        if (a >= num_points() || b >= num_points())
            throw ValidationError("point handle out of range");
        if (kind_ == Kind::Euclidean2D) return euclid(points_[a], points_[b]);
        return dist_[a][b];
    }

    const Point& point(std::size_t i) const {
        if (kind_ != Kind::Euclidean2D)
            throw ValidationError("point coordinates only exist in the euclidean metric");
        return points_.at(i);
    }

    const std::vector<std::vector<double>>& raw_matrix() const { return dist_; }

    bool operator==(const MetricSpace&) const = default;

private:
    Kind kind_ = Kind::Euclidean2D;
    std::vector<Point> points_;             // Euclidean2D
    std::vector<std::vector<double>> dist_; // ExplicitMatrix
};

struct Link {
    int id = 0;
    std::size_t sender = 0;
    std::size_t receiver = 0;

    bool operator==(const Link&) const = default;
};

struct SinrParams {
    double alpha = 3.0;  // path-loss exponent
    double beta = 2.0;   // SINR threshold
    double noise = 1.0;  // ambient noise N

    void validate() const {
        if (!(std::isfinite(alpha) && alpha > 0))
            throw ValidationError("alpha must be finite and > 0");
        if (!(std::isfinite(beta) && beta > 0))
            throw ValidationError("beta must be finite and > 0");
        if (!(std::isfinite(noise) && noise >= 0))
            throw ValidationError("noise must be finite and >= 0");
    }

    bool operator==(const SinrParams&) const = default;
};

// A set of links over a metric space with global SINR parameters.
// Immutable after construction; link ids are dense 0..n-1 and index the
// internal link vector directly.
class Instance {
public:
    Instance(MetricSpace metric, std::vector<Link> links, SinrParams params)
        : metric_(std::move(metric)), links_(std::move(links)), params_(params) {
        params_.validate();
        const std::size_t n = links_.size();
        std::sort(links_.begin(), links_.end(),
                  [](const Link& a, const Link& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < n; ++i) {
            if (links_[i].id != static_cast<int>(i))
                throw ValidationError("link ids must be unique and dense 0..n-1");
            if (links_[i].sender >= metric_.num_points() ||
                links_[i].receiver >= metric_.num_points())
                throw ValidationError("link references invalid point handle");
        }
        lengths_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            lengths_[i] = metric_.distance(links_[i].sender, links_[i].receiver);
            if (!(lengths_[i] > 0.0))
                throw ValidationError("link " + std::to_string(i) +
                                      " has zero length (coincident endpoints)");
        }
    }

    std::size_t size() const { return links_.size(); }
    const MetricSpace& metric() const { return metric_; }
    const SinrParams& params() const { return params_; }
    const std::vector<Link>& links() const { return links_; }

    const Link& link(int v) const { return links_.at(static_cast<std::size_t>(v)); }
    double length(int v) const { return lengths_.at(static_cast<std::size_t>(v)); }

    // d_{wv} = d(s_w, r_v)
    double cross_dist(int w, int v) const {
        return metric_.distance(link(w).sender, link(v).receiver);
    }

    // Total order on links: (length, id) lexicographic.
    bool shorter(int v, int w) const {
        const double lv = length(v), lw = length(w);
        if (lv != lw) return lv < lw;
        return v < w;
    }

    bool operator==(const Instance&) const = default;

private:
    MetricSpace metric_;
    std::vector<Link> links_;
    SinrParams params_;
    std::vector<double> lengths_;
};

// Max/min length ratio.
inline double delta(const Instance& inst) {
    if (inst.size() == 0) throw ConfigError("delta of an empty instance");
    double lo = inst.length(0), hi = inst.length(0);
    for (std::size_t v = 1; v < inst.size(); ++v) {
        lo = std::min(lo, inst.length(static_cast<int>(v)));
        hi = std::max(hi, inst.length(static_cast<int>(v)));
    }
    return hi / lo;
}

// Partition into length classes anchored at the minimum length with factor-2
// boundaries: class i holds links with length in [lmin*2^i, lmin*2^(i+1)).
// Empty classes are dropped; every returned class has max/min ratio <= 2.
inline std::vector<std::vector<int>> length_classes(const Instance& inst) {
    if (inst.size() == 0) throw ConfigError("length_classes of an empty instance");
    double lmin = inst.length(0);
    for (std::size_t v = 1; v < inst.size(); ++v)
        lmin = std::min(lmin, inst.length(static_cast<int>(v)));
    std::vector<std::vector<int>> classes;
    for (std::size_t v = 0; v < inst.size(); ++v) {
        int i = static_cast<int>(std::floor(std::log2(inst.length(static_cast<int>(v)) / lmin)));
        if (i < 0) i = 0;
        // guard against log2 rounding at exact powers of two
        while (inst.length(static_cast<int>(v)) < lmin * std::exp2(i)) --i;
        while (inst.length(static_cast<int>(v)) >= lmin * std::exp2(i + 1)) ++i;
        if (classes.size() <= static_cast<std::size_t>(i))
            classes.resize(static_cast<std::size_t>(i) + 1);
        classes[static_cast<std::size_t>(i)].push_back(static_cast<int>(v));
    }
    std::erase_if(classes, [](const auto& c) { return c.empty(); });
    return classes;
}

}  // namespace sinr
