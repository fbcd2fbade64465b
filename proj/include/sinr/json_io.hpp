#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sinr/model.hpp"

namespace sinr {

inline nlohmann::json to_json(const Instance& inst) {
    nlohmann::json j;
    j["params"] = {{"alpha", inst.params().alpha},
                   {"beta", inst.params().beta},
                   {"noise", inst.params().noise}};
    nlohmann::json links = nlohmann::json::array();
    if (inst.metric().kind() == MetricSpace::Kind::Euclidean2D) {
        j["metric"] = {{"kind", "euclidean2d"}};
        for (const Link& l : inst.links()) {
            const Point& s = inst.metric().point(l.sender);
            const Point& r = inst.metric().point(l.receiver);
            links.push_back({{"id", l.id}, {"sx", s.x}, {"sy", s.y}, {"rx", r.x}, {"ry", r.y}});
        }
    } else {
        j["metric"] = {{"kind", "matrix"},
                       {"points", inst.metric().num_points()},
                       {"d", inst.metric().raw_matrix()}};
        for (const Link& l : inst.links())
            links.push_back({{"id", l.id}, {"s", l.sender}, {"r", l.receiver}});
    }
    j["links"] = links;
    return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
    try {
        SinrParams params;
        params.alpha = j.at("params").at("alpha").get<double>();
        params.beta = j.at("params").at("beta").get<double>();
        params.noise = j.at("params").at("noise").get<double>();
        const std::string kind = j.at("metric").at("kind").get<std::string>();
        std::vector<Link> links;
        if (kind == "euclidean2d") {
            std::vector<Point> pts;
            for (const auto& l : j.at("links")) {
                pts.push_back({l.at("sx").get<double>(), l.at("sy").get<double>()});
                pts.push_back({l.at("rx").get<double>(), l.at("ry").get<double>()});
                links.push_back({l.at("id").get<int>(), pts.size() - 2, pts.size() - 1});
            }
            return Instance(MetricSpace::euclidean(std::move(pts)), std::move(links), params);
        }
        if (kind == "matrix") {
            auto d = j.at("metric").at("d").get<std::vector<std::vector<double>>>();
            const auto points = j.at("metric").at("points").get<std::size_t>();
            if (d.size() != points)
                throw ParseError("metric.points disagrees with matrix dimension");
            for (const auto& l : j.at("links"))
                links.push_back({l.at("id").get<int>(), l.at("s").get<std::size_t>(),
                                 l.at("r").get<std::size_t>()});
            return Instance(MetricSpace::matrix(std::move(d)), std::move(links), params);
        }
        throw ParseError("unknown metric kind: " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed instance document: ") + e.what());
    }
}

inline std::string save_instance(const Instance& inst) { return to_json(inst).dump(2); }

inline Instance load_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance parse error: ") + e.what());
    }
    return instance_from_json(j);
}

inline void save_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << save_instance(inst) << "\n";
}

inline Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_instance(ss.str());
}

}  // namespace sinr
