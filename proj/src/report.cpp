#include "qsim/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>

namespace qsim {

namespace {

struct OutcomeRow {
    QualiaLabel qualia;
    std::uint64_t count;
    double frequency;
    double three_sigma;
};

std::vector<OutcomeRow> sorted_rows(const EnsembleStats& stats) {
    std::vector<OutcomeRow> rows;
    for (const auto& [label, count] : stats.counts)
        rows.push_back({label, count, stats.frequency(label), stats.three_sigma(label)});
    std::sort(rows.begin(), rows.end(), [](const OutcomeRow& a, const OutcomeRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.qualia < b.qualia;
    });
    return rows;
}

std::string sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string report_text(const RunReport& report) {
    std::string out;
    char line[256];

    out += "scenario: " + report.scenario_name;
    if (!report.scenario_ref.empty() && report.scenario_ref != report.scenario_name)
        out += " (" + report.scenario_ref + ")";
    out += "\n";
    out += "digest: " + report.digest + "\n";
    std::snprintf(line, sizeof line,
                  "seed: %" PRIu64 "  trajectories: %" PRIu64 "  workers: %zu\n", report.seed,
                  report.trajectories, report.workers);
    out += line;

    std::size_t label_width = std::string("outcome").size();
    const auto rows = sorted_rows(report.stats);
    for (const auto& row : rows) label_width = std::max(label_width, row.qualia.token.size());

    std::snprintf(line, sizeof line, "%-*s %12s %12s %12s\n", static_cast<int>(label_width),
                  "outcome", "count", "frequency", "3sigma");
    out += line;
    for (const auto& row : rows) {
        std::snprintf(line, sizeof line, "%-*s %12" PRIu64 " %12s %12s\n",
                      static_cast<int>(label_width), row.qualia.token.c_str(), row.count,
                      sig6(row.frequency).c_str(), sig6(row.three_sigma).c_str());
        out += line;
    }

    std::snprintf(line, sizeof line, "projection events: %" PRIu64 "\n",
                  report.stats.projection_events);
    out += line;
    std::snprintf(line, sizeof line, "wall: %s s\n", sig6(report.wall_seconds).c_str());
    out += line;
    return out;
}

Json report_json(const RunReport& report) {
    Json doc = Json::object();
    doc["scenario"] = Json{{"name", report.scenario_name},
                           {"ref", report.scenario_ref},
                           {"digest", report.digest}};
    doc["seed"] = report.seed;
    doc["trajectories"] = report.trajectories;
    doc["workers"] = report.workers;
    Json outcomes = Json::array();
    for (const auto& row : sorted_rows(report.stats)) {
        outcomes.push_back(Json{{"qualia", row.qualia.token},
                                {"count", row.count},
                                {"frequency", row.frequency},
                                {"three_sigma", row.three_sigma}});
    }
    doc["outcomes"] = std::move(outcomes);
    doc["projection_events"] = report.stats.projection_events;
    doc["wall_seconds"] = report.wall_seconds;
    return doc;
}

} // namespace qsim
