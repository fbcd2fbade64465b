// Command-line front end: instance generation, solver runs, brute-force
// oracles, scheduling, measure sweeps and validator harnesses.
//
// Exit codes: 0 success, 1 usage, 2 model error, 3 size limit,
// 4 validation failure.

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinr/sinr.hpp"

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

std::string timestamp_utc() {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw sinr::ConfigError("cannot open output file: " + out_path);
    f << report.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw sinr::ConfigError("cannot open output file: " + out_path);
    f << text;
}

sinr::PowerMode parse_mode(const std::string& mode, double p) {
    if (mode == "pc") return sinr::PowerMode::pc();
    if (mode == "oblivious") return sinr::PowerMode::oblivious(p);
    throw sinr::ConfigError("unknown power mode: " + mode);
}

json chain_report(const sinr::Instance& inst, const sinr::GrTrace& t) {
    // recomputes the acceptance-rule consequences against the final sets
    const sinr::PowerAssignment P = t.assignment;
    bool rejected_ok = true;
    for (std::size_t i = 0; i < t.processed.size(); ++i) {
        if (t.accepted[i]) continue;
        const int v = t.processed[i];
        double b = 0.0;
        for (int w : t.accepted_R)
            if (inst.shorter(w, v))
                b += sinr::affectance(inst, P, w, v) + sinr::affectance(inst, P, v, w);
        if (b < 0.5 - 1e-12) rejected_ok = false;
    }
    double total = 0.0;
    for (int v : t.accepted_R)
        for (int w : t.accepted_R) total += sinr::affectance(inst, P, w, v);
    const bool load_ok = total <= static_cast<double>(t.accepted_R.size()) / 2.0 + 1e-9;
    const bool half_ok = t.final_X.size() * 2 >= t.accepted_R.size();
    bool kept_ok = true;
    for (int v : t.final_X) {
        double in_aff = 0.0;
        for (int w : t.accepted_R) in_aff += sinr::affectance(inst, P, w, v);
        if (in_aff > 1.0 + 1e-9) kept_ok = false;
    }
    return {{"rejected_half_bound", rejected_ok},
            {"accepted_load_bound", load_ok},
            {"kept_at_least_half", half_ok},
            {"kept_unit_in_affectance", kept_ok}};
}

struct CsvRow {
    std::uint64_t seed;
    double p;
    double target_delta;
    std::string line;
};

int run_gen(const sinr::GenConfig& cfg, const sinr::SinrParams& prm,
            const std::string& out_path) {
    const sinr::Instance inst = sinr::generate(cfg, prm);
    emit_text(sinr::save_instance(inst) + "\n", out_path);
    return 0;
}

int run_solve(const std::string& in_path, double p, bool with_oracle,
              const std::string& out_path) {
    const sinr::Instance inst = sinr::load_instance_file(in_path);
    const sinr::GrTrace t = sinr::gr(inst, p);
    json rep = {{"timestamp", timestamp_utc()},
                {"config", {{"command", "solve"}, {"instance", in_path}, {"p", p}}},
                {"n", inst.size()},
                {"accepted", t.accepted_R},
                {"kept", t.final_X},
                {"accepted_size", t.accepted_R.size()},
                {"kept_size", t.final_X.size()},
                {"scale", t.assignment.scale},
                {"invariants", chain_report(inst, t)}};
    json trace = json::array();
    for (std::size_t i = 0; i < t.processed.size(); ++i)
        trace.push_back({{"id", t.processed[i]},
                         {"test_value", t.bhat[i]},
                         {"accepted", static_cast<bool>(t.accepted[i])}});
    rep["trace"] = std::move(trace);
    if (with_oracle) {
        const auto opt = sinr::brute_opt(inst, sinr::PowerMode::pc());
        rep["opt_pc_size"] = opt.size();
        rep["opt_pc"] = opt;
        rep["ratio"] = t.final_X.empty()
                           ? 0.0
                           : static_cast<double>(opt.size()) /
                                 static_cast<double>(t.final_X.size());
    }
    emit(rep, out_path);
    return 0;
}

int run_oracle(const std::string& in_path, const std::string& what,
               const std::string& mode, double p, const std::string& out_path) {
    const sinr::Instance inst = sinr::load_instance_file(in_path);
    const sinr::PowerMode pm = parse_mode(mode, p);
    json rep = {{"timestamp", timestamp_utc()},
                {"config",
                 {{"command", "oracle"},
                  {"instance", in_path},
                  {"what", what},
                  {"mode", mode},
                  {"p", p}}},
                {"n", inst.size()}};
    if (what == "opt") {
        const auto best = sinr::brute_opt(inst, pm);
        rep["opt"] = best;
        rep["opt_size"] = best.size();
    } else if (what == "schedule") {
        rep["min_slots"] = sinr::brute_min_schedule(inst, pm);
    } else {
        throw sinr::ConfigError("oracle: unknown target " + what);
    }
    emit(rep, out_path);
    return 0;
}

int run_schedule(const std::string& in_path, double p, const std::string& out_path) {
    const sinr::Instance inst = sinr::load_instance_file(in_path);
    const sinr::Schedule s = sinr::schedule_gr(inst, p);
    json slots = json::array();
    for (std::size_t i = 0; i < s.slots.size(); ++i)
        slots.push_back({{"links", s.slots[i]}, {"scale", s.assignments[i].scale}});
    emit({{"timestamp", timestamp_utc()},
          {"config", {{"command", "schedule"}, {"instance", in_path}, {"p", p}}},
          {"n", inst.size()},
          {"slot_count", s.slots.size()},
          {"slots", std::move(slots)}},
         out_path);
    return 0;
}

sinr::MeasureReport run_one_measure(const sinr::Instance& inst, const std::string& which,
                                    double p, const std::string& qmode,
                                    const std::string& method) {
    if (which == "ind")
        return sinr::inductive_independence(inst, p, parse_mode(qmode, p));
    if (which == "avgaff") return sinr::max_avg_affectance(inst, p, method);
    if (which == "outaff") return sinr::max_out_affectance(inst, p);
    throw sinr::ConfigError("measure: unknown measure " + which);
}

int run_measure(const std::string& in_path, const std::string& which, double p,
                const std::string& qmode, const std::string& method,
                const std::vector<double>& sweep_delta, int gen_n, int seed_count,
                const sinr::SinrParams& prm, const std::string& csv_path,
                const std::string& out_path) {
    if (sweep_delta.empty()) {
        const sinr::Instance inst = sinr::load_instance_file(in_path);
        const sinr::MeasureReport r = run_one_measure(inst, which, p, qmode, method);
        json rep = {{"timestamp", timestamp_utc()},
                    {"config",
                     {{"command", "measure"},
                      {"instance", in_path},
                      {"which", which},
                      {"p", p},
                      {"qmode", qmode},
                      {"method", method}}},
                    {"n", inst.size()},
                    {"delta", sinr::delta(inst)},
                    {"value", r.value},
                    {"method", r.method},
                    {"digest", r.digest}};
        if (r.witness)
            rep["witness"] = {{"set", r.witness->first}, {"link", r.witness->second}};
        emit(rep, out_path);
        return 0;
    }

    // sweep: one generated instance per (seed, delta), rows sorted by (seed, p, delta)
    std::vector<CsvRow> rows;
    for (int seed = 0; seed < seed_count; ++seed)
        for (double d : sweep_delta) {
            sinr::GenConfig cfg;
            cfg.n = gen_n;
            cfg.seed = static_cast<std::uint64_t>(seed);
            cfg.target_delta = d;
            const sinr::Instance inst = sinr::generate(cfg, prm);
            const sinr::MeasureReport r = run_one_measure(inst, which, p, qmode, method);
            char line[256];
            std::snprintf(line, sizeof line, "%d,%d,%d,%.17g,%.17g,%.17g,%s,%s,%.17g,%s",
                          kSchemaVersion, seed, gen_n, p, d, sinr::delta(inst),
                          which.c_str(), r.method.c_str(), r.value, r.digest.c_str());
            rows.push_back({static_cast<std::uint64_t>(seed), p, d, line});
        }
    std::sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        return std::tie(a.seed, a.p, a.target_delta) < std::tie(b.seed, b.p, b.target_delta);
    });
    std::string csv =
        "schema_version,seed,n,p,target_delta,delta,which,method,value,digest\n";
    for (const CsvRow& r : rows) csv += r.line + "\n";
    emit_text(csv, csv_path.empty() ? out_path : csv_path);
    return 0;
}

// equilength rows with generous spacing satisfy the validators' hypotheses
// by construction; the probe link is placed pseudo-randomly
sinr::Instance geometry_row(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double gap = 6.5 + static_cast<double>(rng() % 2000) / 100.0;
    const int k = 3 + static_cast<int>(rng() % 4);
    std::vector<sinr::Point> pts;
    std::vector<sinr::Link> links;
    for (int i = 0; i < k; ++i) {
        pts.push_back({i * gap, 0.0});
        pts.push_back({i * gap + 1.0, 0.0});
        links.push_back({i, static_cast<std::size_t>(2 * i),
                         static_cast<std::size_t>(2 * i + 1)});
    }
    const double px = static_cast<double>(rng() % 8000) / 100.0 - 20.0;
    const double py = static_cast<double>(rng() % 8000) / 100.0 - 40.0;
    pts.push_back({px, py});
    pts.push_back({px + 0.4, py + 1.1});
    links.push_back({k, static_cast<std::size_t>(2 * k), static_cast<std::size_t>(2 * k + 1)});
    return sinr::Instance(sinr::MetricSpace::euclidean(pts), links, sinr::SinrParams{});
}

int run_validate(int seed_count, int n, double p, double tau, int trials,
                 const sinr::SinrParams& prm, const std::string& report_format,
                 const std::string& out_path) {
    int geom_checked = 0, geom_failed = 0, skipped = 0;
    int lld_violations = 0, l3_violations = 0;
    double affequi_c = 0.0, worst_geom_ratio = 0.0;
    for (int seed = 0; seed < seed_count; ++seed) {
        const sinr::Instance row = geometry_row(static_cast<std::uint64_t>(seed));
        const int probe = static_cast<int>(row.size()) - 1;
        std::vector<int> S(static_cast<std::size_t>(probe));
        for (int i = 0; i < probe; ++i) S[static_cast<std::size_t>(i)] = i;
        try {
            const sinr::GeometryReport g = sinr::validate_geometry(row, S, probe);
            ++geom_checked;
            if (!g.ok) ++geom_failed;
            worst_geom_ratio =
                std::max({worst_geom_ratio, g.max_ratio_geom1, g.max_ratio_geom2});
        } catch (const sinr::PreconditionError&) {
            ++skipped;
        }

        sinr::GenConfig cfg;
        cfg.n = n;
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.target_delta = 256.0;
        const sinr::Instance inst = sinr::generate(cfg, prm);
        try {
            const sinr::LemmaReport r = sinr::validate_interference_lemmas(
                inst, p, tau, trials, static_cast<std::uint64_t>(seed));
            lld_violations += r.lld_violations;
            l3_violations += r.l3_violations;
            affequi_c = std::max(affequi_c, r.affequi_c);
            skipped += r.skipped;
        } catch (const sinr::PreconditionError& e) {
            std::cerr << "skip seed " << seed << ": " << e.what() << "\n";
            ++skipped;
        }
    }
    const int hard_violations = geom_failed + lld_violations + l3_violations;
    if (report_format == "junit") {
        std::string xml = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        xml += "<testsuite name=\"validators\" tests=\"3\" failures=\"" +
               std::to_string((geom_failed ? 1 : 0) + (lld_violations ? 1 : 0) +
                              (l3_violations ? 1 : 0)) +
               "\">\n";
        auto testcase = [&](const std::string& name, int fails) {
            xml += "  <testcase name=\"" + name + "\"";
            if (fails)
                xml += "><failure message=\"" + std::to_string(fails) +
                       " violations\"/></testcase>\n";
            else
                xml += "/>\n";
        };
        testcase("closest_link_factor6", geom_failed);
        testcase("long_link_count", lld_violations);
        testcase("ball_count", l3_violations);
        xml += "</testsuite>\n";
        emit_text(xml, out_path);
    } else {
        emit({{"timestamp", timestamp_utc()},
              {"config",
               {{"command", "validate"},
                {"seeds", seed_count},
                {"n", n},
                {"p", p},
                {"tau", tau},
                {"trials", trials}}},
              {"geometry_checked", geom_checked},
              {"geometry_failed", geom_failed},
              {"worst_geometry_ratio", worst_geom_ratio},
              {"long_link_violations", lld_violations},
              {"ball_count_violations", l3_violations},
              {"equilength_residual_constant", affequi_c},
              {"skipped", skipped}},
             out_path);
    }
    return hard_violations > 0 ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SINR link scheduling toolkit"};
    app.require_subcommand(1);

    sinr::SinrParams prm;
    std::string in_path, out_path;
    double p = 0.5;

    auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", prm.alpha, "path-loss exponent");
        cmd->add_option("--beta", prm.beta, "SINR threshold");
        cmd->add_option("--noise", prm.noise, "ambient noise");
        cmd->add_option("-o,--output", out_path, "output file (default stdout)");
    };

    sinr::GenConfig gen_cfg;
    CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--n", gen_cfg.n, "link count")->required();
    gen->add_option("--seed", gen_cfg.seed, "generator seed");
    gen->add_option("--delta", gen_cfg.target_delta, "target max/min length ratio");
    gen->add_option("--world", gen_cfg.world_size, "square world side");
    gen->add_option("--length-min", gen_cfg.length_min, "shortest link length");
    add_params(gen);

    bool with_oracle = false;
    CLI::App* solve = app.add_subcommand("solve", "run the greedy capacity algorithm");
    solve->add_option("instance", in_path, "instance JSON file")->required();
    solve->add_option("--p", p, "oblivious power exponent");
    solve->add_flag("--oracle", with_oracle, "also compute the exact pc optimum");
    add_params(solve);

    std::string what = "opt", mode = "oblivious";
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force reference answers");
    oracle->add_option("instance", in_path, "instance JSON file")->required();
    oracle->add_option("--what", what, "opt | schedule");
    oracle->add_option("--mode", mode, "oblivious | pc");
    oracle->add_option("--p", p, "oblivious power exponent");
    add_params(oracle);

    CLI::App* schedule = app.add_subcommand("schedule", "repeated-greedy schedule");
    schedule->add_option("instance", in_path, "instance JSON file")->required();
    schedule->add_option("--p", p, "oblivious power exponent");
    add_params(schedule);

    std::string which = "ind", qmode = "oblivious", method = "exact", csv_path;
    std::vector<double> sweep_delta;
    int gen_n = 12, seed_count = 10;
    CLI::App* measure = app.add_subcommand("measure", "interference measures");
    measure->add_option("instance", in_path, "instance JSON file");
    measure->add_option("--which", which, "ind | avgaff | outaff");
    measure->add_option("--p", p, "oblivious power exponent");
    measure->add_option("--qmode", qmode, "feasibility side: oblivious | pc");
    measure->add_option("--method", method, "exact | peel (avgaff only)");
    measure->add_option("--sweep-delta", sweep_delta,
                        "generate instances across these target deltas");
    measure->add_option("--gen-n", gen_n, "links per generated instance (sweep)");
    measure->add_option("--seeds", seed_count, "seed count 0..k-1 (sweep)");
    measure->add_option("--csv", csv_path, "CSV output file (sweep)");
    add_params(measure);

    double tau = 4.0;
    int trials = 10, val_n = 14, val_seeds = 100;
    std::string report_format = "json";
    CLI::App* validate = app.add_subcommand("validate", "falsification harness");
    validate->add_option("--seeds", val_seeds, "seed count 0..k-1");
    validate->add_option("--n", val_n, "links per generated instance");
    validate->add_option("--p", p, "oblivious power exponent");
    validate->add_option("--tau", tau, "affectance threshold parameter");
    validate->add_option("--trials", trials, "sampled feasible sets per instance");
    validate->add_option("--report", report_format, "json | junit");
    add_params(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) return run_gen(gen_cfg, prm, out_path);
        if (solve->parsed()) return run_solve(in_path, p, with_oracle, out_path);
        if (oracle->parsed()) return run_oracle(in_path, what, mode, p, out_path);
        if (schedule->parsed()) return run_schedule(in_path, p, out_path);
        if (measure->parsed())
            return run_measure(in_path, which, p, qmode, method, sweep_delta, gen_n,
                               seed_count, prm, csv_path, out_path);
        if (validate->parsed())
            return run_validate(val_seeds, val_n, p, tau, trials, prm, report_format,
                                out_path);
    } catch (const sinr::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const sinr::SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sinr::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const sinr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
