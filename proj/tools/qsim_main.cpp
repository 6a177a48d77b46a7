// qsim: run admissibility-constrained state-vector scenarios.
//   qsim run <scenario> [--seed S] [--trajectories N] [--workers W] [--out F]
//   qsim zeno [--theta T | --total-angle A] [--pulses N] [--mode M] [--out F]
//   qsim validate <scenario>
// Scenarios are JSON files or builtin:<name>. Exit codes: 0 ok, 2 input
// error, 3 hung universe.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qsim/experiments.hpp"
#include "qsim/report.hpp"
#include "qsim/scenario_io.hpp"

namespace {

using namespace qsim;

int write_json_file(const Json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 2;
    }
    out << doc.dump(2) << "\n";
    return 0;
}

int cmd_run(const std::string& ref, std::uint64_t seed, std::uint64_t trajectories,
            std::size_t workers, const std::string& out_path) {
    Scenario sc = load_scenario(ref);
    const auto findings = sc.validate();
    if (!findings.empty()) {
        for (const auto& finding : findings) std::cerr << "finding: " << finding << "\n";
        return 2;
    }

    RunReport report;
    report.scenario_ref = ref;
    report.scenario_name = sc.name.empty() ? "(unnamed)" : sc.name;
    report.digest = scenario_digest(sc);
    report.seed = seed;
    report.trajectories = trajectories;
    report.workers = workers;

    const auto start = std::chrono::steady_clock::now();
    report.stats = run_ensemble(sc, trajectories, seed, workers);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::cout << report_text(report);
    if (!out_path.empty()) return write_json_file(report_json(report), out_path);
    return 0;
}

int cmd_zeno(double theta, std::size_t pulses, const std::string& mode,
             const std::optional<double>& total_angle, const std::string& out_path) {
    const bool deferred = (mode == "deferred" || mode == "both");
    const bool collapse = (mode == "collapse" || mode == "both");
    if (total_angle && pulses < 1) {
        std::cerr << "error: --total-angle needs --pulses >= 1\n";
        return 2;
    }

    struct Row {
        std::size_t n;
        double theta;
        std::optional<double> deferred;
        std::optional<double> collapse;
    };
    std::vector<Row> rows;
    const std::size_t first = total_angle ? 1 : 0;
    for (std::size_t n = first; n <= pulses; ++n) {
        Row row;
        row.n = n;
        row.theta = total_angle ? *total_angle / static_cast<double>(n) : theta;
        if (!(row.theta >= 0.0 && row.theta <= std::numbers::pi / 2.0)) {
            std::cerr << "error: per-pulse angle " << row.theta << " at N=" << n
                      << " lies outside [0, pi/2]\n";
            return 2;
        }
        const ZenoParams z{row.theta, n};
        if (deferred) row.deferred = zeno_deferred_survival(z);
        if (collapse) row.collapse = zeno_collapse_survival(z);
        rows.push_back(row);
    }

    char line[160];
    std::string header = "    N      theta";
    if (deferred) header += "          deferred";
    if (collapse) header += "          collapse";
    if (deferred && collapse) header += "            |diff|";
    std::cout << header << "\n";
    for (const auto& row : rows) {
        std::snprintf(line, sizeof line, "%5zu %10.6f", row.n, row.theta);
        std::string text = line;
        if (row.deferred) {
            std::snprintf(line, sizeof line, " %17.10f", *row.deferred);
            text += line;
        }
        if (row.collapse) {
            std::snprintf(line, sizeof line, " %17.10f", *row.collapse);
            text += line;
        }
        if (row.deferred && row.collapse) {
            std::snprintf(line, sizeof line, " %17.3e", std::abs(*row.deferred - *row.collapse));
            text += line;
        }
        std::cout << text << "\n";
    }

    if (!out_path.empty()) {
        Json doc = Json::array();
        for (const auto& row : rows) {
            Json entry = Json{{"pulses", row.n}, {"theta", row.theta}};
            if (row.deferred) entry["deferred"] = *row.deferred;
            if (row.collapse) entry["collapse"] = *row.collapse;
            doc.push_back(std::move(entry));
        }
        return write_json_file(doc, out_path);
    }
    return 0;
}

int cmd_validate(const std::string& ref) {
    constexpr std::string_view prefix = "builtin:";
    Json doc;
    if (ref.starts_with(prefix)) {
        doc = scenario_to_json(builtin_scenario(ref.substr(prefix.size())));
    } else {
        std::ifstream in(ref);
        if (!in) {
            std::cerr << "error: cannot read scenario file '" << ref << "'\n";
            return 2;
        }
        try {
            doc = Json::parse(in);
        } catch (const Json::parse_error& e) {
            std::cout << "finding: not valid JSON: " << e.what() << "\n";
            return 2;
        }
    }

    std::vector<std::string> findings = validate_scenario_json(doc);
    Scenario sc;
    if (findings.empty()) {
        sc = scenario_from_json(doc);
        const auto semantic = sc.validate();
        findings.insert(findings.end(), semantic.begin(), semantic.end());
    }
    if (!findings.empty()) {
        for (const auto& finding : findings) std::cout << "finding: " << finding << "\n";
        return 2;
    }
    for (const auto& warning : sc.lint()) std::cout << "warning: " << warning << "\n";
    std::cout << "ok: " << (sc.name.empty() ? std::string("(unnamed)") : sc.name)
              << " digest " << scenario_digest(sc) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"admissibility-constrained state-vector simulator"};
    app.require_subcommand(1);

    std::string run_ref;
    std::uint64_t seed = 0;
    std::uint64_t trajectories = 10000;
    std::size_t workers = 1;
    std::string run_out;
    auto* run = app.add_subcommand("run", "run an ensemble of trajectories");
    run->add_option("scenario", run_ref, "scenario file or builtin:<name>")->required();
    run->add_option("--seed", seed, "ensemble base seed (u64)")->capture_default_str();
    run->add_option("--trajectories", trajectories, "number of trajectories")
        ->capture_default_str();
    run->add_option("--workers", workers, "worker threads")->capture_default_str();
    run->add_option("--out", run_out, "write full-precision JSON report here");

    double theta = 0.0;
    std::size_t pulses = 10;
    std::string mode = "both";
    std::optional<double> total_angle;
    std::string zeno_out;
    auto* zeno = app.add_subcommand("zeno", "survival table for pulsed decay");
    zeno->add_option("--theta", theta, "rotation per pulse, radians in [0, pi/2]")
        ->check(CLI::Range(0.0, std::numbers::pi / 2.0))
        ->capture_default_str();
    zeno->add_option("--pulses", pulses, "max pulse count N")->capture_default_str();
    zeno->add_option("--mode", mode, "deferred | collapse | both")
        ->check(CLI::IsMember({"deferred", "collapse", "both"}))
        ->capture_default_str();
    zeno->add_option("--total-angle", total_angle,
                     "hold N*theta fixed at this angle (theta = angle/N per row)");
    zeno->add_option("--out", zeno_out, "write full-precision JSON table here");

    std::string validate_ref;
    auto* validate = app.add_subcommand("validate", "schema and invariant checks");
    validate->add_option("scenario", validate_ref, "scenario file or builtin:<name>")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_ref, seed, trajectories, workers, run_out);
        if (zeno->parsed()) return cmd_zeno(theta, pulses, mode, total_angle, zeno_out);
        return cmd_validate(validate_ref);
    } catch (const HungUniverse& e) {
        std::cerr << "hung universe: " << e.what() << "\n";
        return 3;
    } catch (const SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
