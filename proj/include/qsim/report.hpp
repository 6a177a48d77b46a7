// report.hpp
// Run reports: the deterministic outcome table (text and JSON) emitted by
// ensemble runs. Everything except the wall-time line is a pure function of
// (scenario, seed, n), so byte-identical reruns are testable.

#pragma once

#include <cstdint>
#include <string>

#include "qsim/dynamics.hpp"
#include "qsim/scenario_io.hpp"

namespace qsim {

struct RunReport {
    std::string scenario_ref;  // as given on the command line
    std::string scenario_name; // from metadata / builtin catalog
    std::string digest;        // scenario_digest of the loaded scenario
    std::uint64_t seed = 0;
    std::uint64_t trajectories = 0;
    std::size_t workers = 1;
    EnsembleStats stats;
    double wall_seconds = 0.0;
};

// Human-readable table, 6 significant digits. Outcome rows sort by count
// descending, then label ascending. The wall-time line comes last so
// determinism checks can strip it.
std::string report_text(const RunReport& report);

// Full-precision machine form (doubles round-trip). Same row order.
Json report_json(const RunReport& report);

} // namespace qsim
