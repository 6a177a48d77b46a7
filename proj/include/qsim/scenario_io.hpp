// scenario_io.hpp
// JSON scenario files: strict schema (unknown keys rejected), canonical
// serialization, a content digest insensitive to whitespace and top-level key
// order, and the builtin:<name> catalog backing the CLI.
//
// Schema (all labels are space-joined token strings, amplitudes [re, im]):
// {
//   "metadata":        {"name": str, "description": str},          optional
//   "alphabet":        {"positions": [[tok,...],...],
//                       "record_tokens": [tok,...]},               required
//   "initial_state":   {"+ B": [1.0, 0.0], ...},                   required
//   "qualia_subspaces": {"Blue": ["+ B", "- B"], ...},             optional
//   "extra_vectors":   [{"qualia": str, "state": {...}}, ...],     optional
//   "schedule":        [{"type": "unitary", "domain": [...],
//                        "matrix": [[[re,im],...],...]},
//                       {"type": "record", "position": 0,
//                        "rules": {"U": "I", ...}},
//                       {"type": "enforce"},
//                       {"type": "observe", "tag": str}],          optional
//   "tolerances":      {"class": 1e-9, "norm": 1e-10}              optional
// }

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qsim/dynamics.hpp"

namespace qsim {

using Json = nlohmann::ordered_json;

// Canonical document: map-backed sections sorted, declaration-ordered
// sections (subspaces, extra vectors, schedule) in declaration order,
// tolerances always explicit, metadata only when non-empty.
Json scenario_to_json(const Scenario& sc);

// Strict parse. Throws ScenarioError carrying every schema finding.
Scenario scenario_from_json(const Json& doc);

// The same schema checks as scenario_from_json, returned as findings
// (path-prefixed messages) instead of a throw. Empty means parseable.
std::vector<std::string> validate_scenario_json(const Json& doc);

// 16 lowercase hex digits: FNV-1a64 of the canonical dump with metadata
// removed. Equal iff the semantic content (physics, not naming) is equal.
std::string scenario_digest(const Scenario& sc);

std::vector<std::string> builtin_names();

// Throws ScenarioError for unknown names, listing the catalog.
Scenario builtin_scenario(const std::string& name);

// "builtin:<name>" or a filesystem path to a JSON document.
Scenario load_scenario(const std::string& ref);

} // namespace qsim
