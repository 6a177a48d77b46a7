#include "qsim/scenario_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string_view>

#include "qsim/experiments.hpp"

namespace qsim {

namespace {

Json amplitude_to_json(const Complex& a) { return Json::array({a.real(), a.imag()}); }

Json state_to_json(const StateVector& s) {
    Json out = Json::object();
    for (const auto& [label, amp] : s.amplitudes) out[label.key()] = amplitude_to_json(amp);
    return out;
}

Json step_to_json(const Step& step) {
    Json out = Json::object();
    if (const auto* u = std::get_if<UnitaryStep>(&step)) {
        out["type"] = "unitary";
        Json domain = Json::array();
        for (const auto& label : u->domain()) domain.push_back(label.key());
        out["domain"] = std::move(domain);
        Json matrix = Json::array();
        for (std::size_t i = 0; i < u->matrix().n; ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < u->matrix().n; ++j)
                row.push_back(amplitude_to_json(u->matrix().at(i, j)));
            matrix.push_back(std::move(row));
        }
        out["matrix"] = std::move(matrix);
    } else if (const auto* r = std::get_if<RecordCoupling>(&step)) {
        out["type"] = "record";
        out["position"] = r->position;
        Json rules = Json::object();
        for (const auto& [token, appended] : r->rules) rules[token] = appended;
        out["rules"] = std::move(rules);
    } else if (std::holds_alternative<EnforceStep>(step)) {
        out["type"] = "enforce";
    } else {
        out["type"] = "observe";
        const auto& tag = std::get<ObserveStep>(step).tag;
        if (!tag.empty()) out["tag"] = tag;
    }
    return out;
}

} // namespace

Json scenario_to_json(const Scenario& sc) {
    Json doc = Json::object();

    if (!sc.name.empty() || !sc.description.empty()) {
        Json meta = Json::object();
        if (!sc.name.empty()) meta["name"] = sc.name;
        if (!sc.description.empty()) meta["description"] = sc.description;
        doc["metadata"] = std::move(meta);
    }

    Json alphabet = Json::object();
    Json positions = Json::array();
    for (const auto& tokens : sc.alphabet.positions) {
        Json pos = Json::array();
        for (const auto& token : tokens) pos.push_back(token);
        positions.push_back(std::move(pos));
    }
    alphabet["positions"] = std::move(positions);
    if (!sc.alphabet.record_tokens.empty()) {
        Json rec = Json::array();
        for (const auto& token : sc.alphabet.record_tokens) rec.push_back(token);
        alphabet["record_tokens"] = std::move(rec);
    }
    doc["alphabet"] = std::move(alphabet);

    doc["initial_state"] = state_to_json(sc.initial_state);

    if (!sc.spec.subspaces.empty()) {
        Json subs = Json::object();
        for (const auto& [qualia, labels] : sc.spec.subspaces) {
            Json arr = Json::array();
            for (const auto& label : labels) arr.push_back(label.key());
            subs[qualia.token] = std::move(arr);
        }
        doc["qualia_subspaces"] = std::move(subs);
    }

    if (!sc.spec.extra_vectors.empty()) {
        Json extras = Json::array();
        for (const auto& [vec, qualia] : sc.spec.extra_vectors) {
            Json entry = Json::object();
            entry["qualia"] = qualia.token;
            entry["state"] = state_to_json(vec);
            extras.push_back(std::move(entry));
        }
        doc["extra_vectors"] = std::move(extras);
    }

    Json schedule = Json::array();
    for (const auto& step : sc.schedule) schedule.push_back(step_to_json(step));
    doc["schedule"] = std::move(schedule);

    doc["tolerances"] = Json{{"class", sc.eps_class}, {"norm", sc.eps_norm}};
    return doc;
}

namespace {

// Collects path-prefixed findings while extracting as much structure as it
// can; the caller decides whether findings are fatal.
struct Reader {
    std::vector<std::string>& findings;

    void err(const std::string& path, const std::string& message) {
        findings.push_back(path + ": " + message);
    }

    void check_keys(const Json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : obj.items()) {
            bool known = false;
            for (const char* candidate : allowed)
                if (key == candidate) known = true;
            if (!known) err(path, "unknown key '" + key + "'");
        }
    }

    std::optional<double> number(const Json& v, const std::string& path) {
        if (!v.is_number()) {
            err(path, "expected a number");
            return {};
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            err(path, "number must be finite");
            return {};
        }
        return d;
    }

    std::optional<std::string> text(const Json& v, const std::string& path) {
        if (!v.is_string()) {
            err(path, "expected a string");
            return {};
        }
        return v.get<std::string>();
    }

    std::optional<std::string> token(const Json& v, const std::string& path) {
        auto s = text(v, path);
        if (!s) return {};
        if (s->empty() || s->find(' ') != std::string::npos) {
            err(path, "token must be a non-empty string without spaces");
            return {};
        }
        return s;
    }

    std::optional<Complex> amplitude(const Json& v, const std::string& path) {
        if (!v.is_array() || v.size() != 2) {
            err(path, "amplitude must be [re, im]");
            return {};
        }
        auto re = number(v[0], path + "[0]");
        auto im = number(v[1], path + "[1]");
        if (!re || !im) return {};
        return Complex{*re, *im};
    }

    std::optional<BasisLabel> basis(const std::string& key, const std::string& path) {
        try {
            return BasisLabel::from_key(key);
        } catch (const SimError& e) {
            err(path, e.what());
            return {};
        }
    }

    std::optional<StateVector> state(const Json& v, const std::string& path) {
        if (!v.is_object()) {
            err(path, "expected an object mapping labels to [re, im]");
            return {};
        }
        if (v.empty()) {
            err(path, "state has no amplitudes");
            return {};
        }
        StateVector s;
        bool ok = true;
        for (const auto& [key, value] : v.items()) {
            const std::string entry_path = path + "['" + key + "']";
            auto label = basis(key, entry_path);
            auto amp = amplitude(value, entry_path);
            if (!label || !amp) {
                ok = false;
                continue;
            }
            s.amplitudes.emplace(std::move(*label), *amp);
        }
        if (!ok) return {};
        return s;
    }

    void alphabet(const Json& v, Scenario& sc) {
        if (!v.is_object()) {
            err("alphabet", "expected an object");
            return;
        }
        check_keys(v, "alphabet", {"positions", "record_tokens"});
        if (!v.contains("positions") || !v["positions"].is_array()) {
            err("alphabet", "missing 'positions' array");
            return;
        }
        std::size_t i = 0;
        for (const auto& pos : v["positions"]) {
            const std::string path = "alphabet.positions[" + std::to_string(i++) + "]";
            std::set<std::string> tokens;
            if (!pos.is_array()) {
                err(path, "expected an array of tokens");
                continue;
            }
            for (const auto& entry : pos)
                if (auto t = token(entry, path))
                    if (!tokens.insert(*t).second) err(path, "duplicate token '" + *t + "'");
            sc.alphabet.positions.push_back(std::move(tokens));
        }
        if (v.contains("record_tokens")) {
            if (!v["record_tokens"].is_array()) {
                err("alphabet.record_tokens", "expected an array of tokens");
            } else {
                for (const auto& entry : v["record_tokens"])
                    if (auto t = token(entry, "alphabet.record_tokens"))
                        sc.alphabet.record_tokens.insert(*t);
            }
        }
    }

    void subspaces(const Json& v, Scenario& sc) {
        if (!v.is_object()) {
            err("qualia_subspaces", "expected an object mapping qualia to label arrays");
            return;
        }
        for (const auto& [qualia, value] : v.items()) {
            const std::string path = "qualia_subspaces['" + qualia + "']";
            if (qualia.empty()) {
                err(path, "qualia token must be non-empty");
                continue;
            }
            if (!value.is_array()) {
                err(path, "expected an array of labels");
                continue;
            }
            std::set<BasisLabel> labels;
            for (const auto& entry : value)
                if (auto key = text(entry, path))
                    if (auto label = basis(*key, path)) labels.insert(std::move(*label));
            sc.spec.subspaces.push_back({QualiaLabel{qualia}, std::move(labels)});
        }
    }

    void extras(const Json& v, Scenario& sc) {
        if (!v.is_array()) {
            err("extra_vectors", "expected an array");
            return;
        }
        std::size_t i = 0;
        for (const auto& entry : v) {
            const std::string path = "extra_vectors[" + std::to_string(i++) + "]";
            if (!entry.is_object()) {
                err(path, "expected an object with 'qualia' and 'state'");
                continue;
            }
            check_keys(entry, path, {"qualia", "state"});
            if (!entry.contains("qualia") || !entry.contains("state")) {
                err(path, "needs both 'qualia' and 'state'");
                continue;
            }
            auto qualia = text(entry["qualia"], path + ".qualia");
            auto vec = state(entry["state"], path + ".state");
            if (!qualia || qualia->empty()) {
                err(path + ".qualia", "qualia token must be non-empty");
                continue;
            }
            if (!vec) continue;
            sc.spec.extra_vectors.emplace_back(std::move(*vec), QualiaLabel{*qualia});
        }
    }

    void unitary_step(const Json& v, const std::string& path, Scenario& sc) {
        check_keys(v, path, {"type", "domain", "matrix"});
        if (!v.contains("domain") || !v["domain"].is_array() || v["domain"].empty()) {
            err(path, "needs a non-empty 'domain' array");
            return;
        }
        std::vector<BasisLabel> domain;
        for (const auto& entry : v["domain"])
            if (auto key = text(entry, path + ".domain"))
                if (auto label = basis(*key, path + ".domain")) domain.push_back(std::move(*label));
        const std::size_t n = domain.size();
        if (n != v["domain"].size()) return; // label findings already recorded

        if (!v.contains("matrix") || !v["matrix"].is_array() || v["matrix"].size() != n) {
            err(path, "needs a 'matrix' with one row per domain label");
            return;
        }
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = v["matrix"][i];
            const std::string row_path = path + ".matrix[" + std::to_string(i) + "]";
            if (!row.is_array() || row.size() != n) {
                err(row_path, "expected " + std::to_string(n) + " entries");
                return;
            }
            for (std::size_t j = 0; j < n; ++j) {
                auto a = amplitude(row[j], row_path + "[" + std::to_string(j) + "]");
                if (!a) return;
                m.at(i, j) = *a;
            }
        }
        try {
            sc.schedule.emplace_back(UnitaryStep(std::move(domain), std::move(m)));
        } catch (const SimError& e) {
            err(path, e.what());
        }
    }

    void record_step(const Json& v, const std::string& path, Scenario& sc) {
        check_keys(v, path, {"type", "position", "rules"});
        if (!v.contains("position") || !v["position"].is_number_unsigned()) {
            err(path, "needs an unsigned integer 'position'");
            return;
        }
        if (!v.contains("rules") || !v["rules"].is_object() || v["rules"].empty()) {
            err(path, "needs a non-empty 'rules' object");
            return;
        }
        RecordCoupling c;
        c.position = v["position"].get<std::size_t>();
        bool ok = true;
        for (const auto& [from, to] : v["rules"].items()) {
            auto appended = token(to, path + ".rules['" + from + "']");
            if (from.empty() || from.find(' ') != std::string::npos) {
                err(path + ".rules", "token must be a non-empty string without spaces");
                ok = false;
            } else if (appended) {
                c.rules.emplace(from, std::move(*appended));
            } else {
                ok = false;
            }
        }
        if (ok) sc.schedule.emplace_back(std::move(c));
    }

    void schedule(const Json& v, Scenario& sc) {
        if (!v.is_array()) {
            err("schedule", "expected an array of steps");
            return;
        }
        std::size_t i = 0;
        for (const auto& step : v) {
            const std::string path = "schedule[" + std::to_string(i++) + "]";
            if (!step.is_object() || !step.contains("type") || !step["type"].is_string()) {
                err(path, "step needs a string 'type'");
                continue;
            }
            const std::string type = step["type"].get<std::string>();
            if (type == "unitary") {
                unitary_step(step, path, sc);
            } else if (type == "record") {
                record_step(step, path, sc);
            } else if (type == "enforce") {
                check_keys(step, path, {"type"});
                sc.schedule.emplace_back(EnforceStep{});
            } else if (type == "observe") {
                check_keys(step, path, {"type", "tag"});
                ObserveStep o;
                if (step.contains("tag")) {
                    if (auto tag = text(step["tag"], path + ".tag")) o.tag = std::move(*tag);
                }
                if (o.tag.empty()) {
                    err(path, "needs a non-empty 'tag'");
                    continue;
                }
                sc.schedule.emplace_back(std::move(o));
            } else {
                err(path, "unknown step type '" + type + "'");
            }
        }
    }

    void tolerances(const Json& v, Scenario& sc) {
        if (!v.is_object()) {
            err("tolerances", "expected an object");
            return;
        }
        check_keys(v, "tolerances", {"class", "norm"});
        if (v.contains("class"))
            if (auto d = number(v["class"], "tolerances.class")) sc.eps_class = *d;
        if (v.contains("norm"))
            if (auto d = number(v["norm"], "tolerances.norm")) sc.eps_norm = *d;
    }

    void metadata(const Json& v, Scenario& sc) {
        if (!v.is_object()) {
            err("metadata", "expected an object");
            return;
        }
        check_keys(v, "metadata", {"name", "description"});
        if (v.contains("name"))
            if (auto s = text(v["name"], "metadata.name")) sc.name = std::move(*s);
        if (v.contains("description"))
            if (auto s = text(v["description"], "metadata.description"))
                sc.description = std::move(*s);
    }

    Scenario document(const Json& doc) {
        Scenario sc;
        if (!doc.is_object()) {
            err("document", "expected a JSON object");
            return sc;
        }
        check_keys(doc, "document",
                   {"metadata", "alphabet", "initial_state", "qualia_subspaces", "extra_vectors",
                    "schedule", "tolerances"});

        if (doc.contains("metadata")) metadata(doc["metadata"], sc);

        if (doc.contains("alphabet"))
            alphabet(doc["alphabet"], sc);
        else
            err("document", "missing required section 'alphabet'");

        if (doc.contains("initial_state")) {
            if (auto s = state(doc["initial_state"], "initial_state"))
                sc.initial_state = std::move(*s);
        } else {
            err("document", "missing required section 'initial_state'");
        }

        if (doc.contains("qualia_subspaces")) subspaces(doc["qualia_subspaces"], sc);
        if (doc.contains("extra_vectors")) extras(doc["extra_vectors"], sc);
        if (doc.contains("schedule")) schedule(doc["schedule"], sc);
        if (doc.contains("tolerances")) tolerances(doc["tolerances"], sc);
        return sc;
    }
};

} // namespace

Scenario scenario_from_json(const Json& doc) {
    std::vector<std::string> findings;
    Scenario sc = Reader{findings}.document(doc);
    if (!findings.empty()) {
        std::string message = "scenario document rejected";
        for (const auto& finding : findings) message += "; " + finding;
        throw ScenarioError(message);
    }
    return sc;
}

std::vector<std::string> validate_scenario_json(const Json& doc) {
    std::vector<std::string> findings;
    Reader{findings}.document(doc);
    return findings;
}

std::string scenario_digest(const Scenario& sc) {
    Json doc = scenario_to_json(sc);
    doc.erase("metadata");
    const std::string bytes = doc.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::vector<std::string> builtin_names() {
    return {"stern-gerlach-5050", "stern-gerlach-99", "zeno-pulsed",  "window-threshold",
            "window-blend",       "phi-overlap",      "phi-rescue",   "hangup"};
}

Scenario builtin_scenario(const std::string& name) {
    Scenario sc;
    if (name == "stern-gerlach-5050") {
        sc = stern_gerlach_scenario({0.5});
    } else if (name == "stern-gerlach-99") {
        sc = stern_gerlach_scenario({0.99});
    } else if (name == "zeno-pulsed") {
        sc = zeno_scenario({0.7854, 2}, false);
    } else if (name == "window-threshold") {
        sc = window_scenario(WindowPolicy::Threshold, 100);
    } else if (name == "window-blend") {
        sc = window_scenario(WindowPolicy::Blend, 100);
    } else if (name == "phi-overlap") {
        sc = phi_overlap_scenario();
    } else if (name == "phi-rescue") {
        sc = phi_rescue_scenario(1);
    } else if (name == "hangup") {
        sc = hangup_scenario();
    } else {
        std::string message = "unknown builtin '" + name + "'; available:";
        for (const auto& candidate : builtin_names()) message += " " + candidate;
        throw ScenarioError(message);
    }
    sc.name = name;
    return sc;
}

Scenario load_scenario(const std::string& ref) {
    constexpr std::string_view prefix = "builtin:";
    if (ref.starts_with(prefix)) return builtin_scenario(ref.substr(prefix.size()));

    std::ifstream in(ref);
    if (!in) throw ScenarioError("cannot read scenario file '" + ref + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ScenarioError("'" + ref + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

} // namespace qsim
