#include "qsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qsim {

namespace {

bool qualia_declared(const AdmissibleSpec& spec, const QualiaLabel& q) {
    for (const auto& [qualia, labels] : spec.subspaces)
        if (qualia == q) return true;
    for (const auto& [vec, qualia] : spec.extra_vectors)
        if (qualia == q) return true;
    return false;
}

} // namespace

std::vector<std::string> Scenario::validate() const {
    std::vector<std::string> findings = spec.validate();

    if (initial_state.empty()) {
        findings.push_back("initial state is empty");
        return findings;
    }
    for (const auto& [label, amp] : initial_state.amplitudes) {
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
            findings.push_back("initial state amplitude on '" + label.str() + "' is not finite");
        if (!alphabet.contains(label))
            findings.push_back("initial state label '" + label.str() + "' not in alphabet");
    }
    if (std::abs(initial_state.norm_sq() - 1.0) > 1e-6) {
        findings.push_back("initial state not normalized (|s|^2 = " +
                           std::to_string(initial_state.norm_sq()) + ")");
        return findings;
    }

    for (const auto& [qualia, labels] : spec.subspaces)
        for (const auto& label : labels)
            if (!alphabet.contains(label))
                findings.push_back("subspace '" + qualia.token + "' label '" + label.str() +
                                   "' not in alphabet");
    for (std::size_t i = 0; i < spec.extra_vectors.size(); ++i)
        for (const auto& [label, amp] : spec.extra_vectors[i].first.amplitudes)
            if (!alphabet.contains(label))
                findings.push_back("extra vector " + std::to_string(i) + " label '" +
                                   label.str() + "' not in alphabet");

    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (const auto* u = std::get_if<UnitaryStep>(&schedule[i])) {
            for (const auto& label : u->domain())
                if (!alphabet.contains(label))
                    findings.push_back("schedule step " + std::to_string(i + 1) +
                                       ": unitary domain label '" + label.str() +
                                       "' not in alphabet");
        } else if (const auto* r = std::get_if<RecordCoupling>(&schedule[i])) {
            for (const auto& [token, appended] : r->rules)
                if (!alphabet.record_tokens.count(appended))
                    findings.push_back("schedule step " + std::to_string(i + 1) +
                                       ": record token '" + appended +
                                       "' not in alphabet record tokens");
        }
    }

    if (!(eps_class > 0.0 && eps_class < 1.0))
        findings.push_back("eps_class must lie in (0, 1)");
    if (!(eps_norm > 0.0 && eps_norm < 1.0))
        findings.push_back("eps_norm must lie in (0, 1)");

    if (findings.empty()) {
        try {
            if (!classify(spec, normalize(initial_state), eps_class).is_definite())
                findings.push_back("initial state not definite");
        } catch (const SimError& e) {
            findings.push_back(std::string("initial state not definite (") + e.what() + ")");
        }
    }

    return findings;
}

std::vector<std::string> Scenario::lint() const {
    std::vector<std::string> warnings;

    bool has_check = false;
    for (const auto& step : schedule)
        if (std::holds_alternative<EnforceStep>(step) || std::holds_alternative<ObserveStep>(step))
            has_check = true;

    // A unitary can create a mixed state when its domain straddles qualia
    // sectors (or leaves the declared structure entirely).
    bool can_mix = false;
    for (const auto& step : schedule) {
        const auto* u = std::get_if<UnitaryStep>(&step);
        if (!u) continue;
        std::set<std::string> sectors;
        for (const auto& label : u->domain()) {
            std::string sector = "(unmapped)";
            for (const auto& [qualia, labels] : spec.subspaces)
                if (labels.count(label)) sector = qualia.token;
            sectors.insert(sector);
        }
        if (sectors.size() > 1) can_mix = true;
    }

    if (can_mix && !has_check)
        warnings.push_back("schedule has sector-mixing unitaries but no enforce or observe step");
    return warnings;
}

std::size_t TrajectoryResult::projection_events() const {
    std::size_t count = 0;
    for (const auto& record : projections)
        if (record.occurred) ++count;
    return count;
}

double EnsembleStats::frequency(const QualiaLabel& label) const {
    if (trajectories == 0) return 0.0;
    auto it = counts.find(label);
    const std::uint64_t c = (it == counts.end()) ? 0 : it->second;
    return static_cast<double>(c) / static_cast<double>(trajectories);
}

double EnsembleStats::three_sigma(const QualiaLabel& label) const {
    if (trajectories == 0) return 0.0;
    const double f = frequency(label);
    return 3.0 * std::sqrt(f * (1.0 - f) / static_cast<double>(trajectories));
}

namespace {

QualiaLabel classify_or_throw(const Scenario& sc, const StateVector& s, const char* context,
                              std::size_t step_index) {
    Classification cls = classify(sc.spec, s, sc.eps_class);
    if (!cls.is_definite())
        throw ObservedMixed(std::string(context) + " at schedule step " +
                            std::to_string(step_index) + " met a mixed state");
    return *cls.definite;
}

TrajectoryResult run_trajectory_unchecked(const Scenario& sc, std::uint64_t seed) {
    TrajectoryResult result;
    result.seed = seed;
    RngStream rng(seed);

    StateVector state = normalize(sc.initial_state);
    result.qualia_history.emplace_back(0, classify_or_throw(sc, state, "initial state", 0));

    for (std::size_t i = 0; i < sc.schedule.size(); ++i) {
        const std::size_t step_index = i + 1;
        const Step& step = sc.schedule[i];
        if (const auto* u = std::get_if<UnitaryStep>(&step)) {
            state = normalize(apply_unitary(*u, state));
        } else if (const auto* r = std::get_if<RecordCoupling>(&step)) {
            state = append_record(*r, state);
        } else if (std::holds_alternative<EnforceStep>(step)) {
            auto [next, record] = enforce(sc.spec, state, rng, sc.eps_class);
            state = std::move(next);
            QualiaLabel label = record.occurred
                                    ? record.chosen->qualia
                                    : *classify(sc.spec, state, sc.eps_class).definite;
            result.projections.push_back(std::move(record));
            result.qualia_history.emplace_back(step_index, std::move(label));
        } else {
            const auto& observe = std::get<ObserveStep>(step);
            const char* context = observe.tag.empty() ? "observe" : observe.tag.c_str();
            result.qualia_history.emplace_back(step_index,
                                               classify_or_throw(sc, state, context, step_index));
        }
    }

    result.final_state = std::move(state);
    return result;
}

void require_valid(const Scenario& sc) {
    auto findings = sc.validate();
    if (findings.empty()) return;
    std::string message = "invalid scenario";
    if (!sc.name.empty()) message += " '" + sc.name + "'";
    for (const auto& finding : findings) message += "; " + finding;
    throw ScenarioError(message);
}

} // namespace

TrajectoryResult run_trajectory(const Scenario& sc, std::uint64_t seed) {
    require_valid(sc);
    return run_trajectory_unchecked(sc, seed);
}

EnsembleStats run_ensemble(const Scenario& sc, std::uint64_t n, std::uint64_t base_seed,
                           std::size_t workers) {
    if (n < 1) throw ScenarioError("ensemble size must be at least 1");
    require_valid(sc);
    if (workers < 1) workers = 1;
    workers = std::min<std::size_t>(workers, n);

    enum class FailKind { Hung, Observed, Other };
    struct Failure {
        std::uint64_t index;
        FailKind kind;
        std::string message;
    };

    struct WorkerAccumulator {
        std::map<QualiaLabel, std::uint64_t> counts;
        std::uint64_t projection_events = 0;
        std::vector<Failure> failures;
    };

    std::vector<WorkerAccumulator> accumulators(workers);
    auto run_block = [&](std::size_t w, std::uint64_t begin, std::uint64_t end) {
        WorkerAccumulator& acc = accumulators[w];
        for (std::uint64_t i = begin; i < end; ++i) {
            try {
                TrajectoryResult result =
                    run_trajectory_unchecked(sc, derive_trajectory_seed(base_seed, i));
                ++acc.counts[result.terminal_qualia()];
                acc.projection_events += result.projection_events();
            } catch (const HungUniverse& e) {
                acc.failures.push_back({i, FailKind::Hung, e.what()});
            } catch (const ObservedMixed& e) {
                acc.failures.push_back({i, FailKind::Observed, e.what()});
            } catch (const std::exception& e) {
                acc.failures.push_back({i, FailKind::Other, e.what()});
            }
        }
    };

    if (workers == 1) {
        run_block(0, 0, n);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t per = n / workers;
        const std::uint64_t extra = n % workers;
        std::uint64_t begin = 0;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::uint64_t count = per + (w < extra ? 1 : 0);
            pool.emplace_back(run_block, w, begin, begin + count);
            begin += count;
        }
        for (auto& t : pool) t.join();
    }

    const Failure* first = nullptr;
    for (const auto& acc : accumulators)
        for (const auto& failure : acc.failures)
            if (!first || failure.index < first->index) first = &failure;
    if (first) {
        const std::string message =
            "trajectory " + std::to_string(first->index) + ": " + first->message;
        switch (first->kind) {
        case FailKind::Hung: throw HungUniverse(message);
        case FailKind::Observed: throw ObservedMixed(message);
        default: throw ScenarioError(message);
        }
    }

    EnsembleStats stats;
    stats.trajectories = n;
    for (const auto& acc : accumulators) {
        stats.projection_events += acc.projection_events;
        for (const auto& [label, count] : acc.counts) stats.counts[label] += count;
    }
    return stats;
}

namespace {

// Relative probability of `target` among the surviving candidate rows of s.
double target_share(const Scenario& sc, const StateVector& s, const QualiaLabel& target) {
    double total = 0.0;
    double hit = 0.0;
    for (const auto& row : overlap_table(sc.spec, s)) {
        if (row.weight < kEpsNull) continue;
        total += row.weight;
        if (row.ref.qualia == target) hit += row.weight;
    }
    if (total <= kEpsNull)
        throw HungUniverse("final state has no overlap with any admissible candidate");
    return hit / total;
}

constexpr std::size_t kMaxBranches = 1'000'000;

double collapse_walk(const Scenario& sc, StateVector state, std::size_t from,
                     std::size_t& branches, const QualiaLabel& target) {
    if (++branches > kMaxBranches)
        throw ScenarioError("collapse tree exceeds branch limit");

    for (std::size_t i = from; i < sc.schedule.size(); ++i) {
        const Step& step = sc.schedule[i];
        if (const auto* u = std::get_if<UnitaryStep>(&step)) {
            state = normalize(apply_unitary(*u, state));
        } else if (const auto* r = std::get_if<RecordCoupling>(&step)) {
            state = append_record(*r, state);
        } else if (std::holds_alternative<EnforceStep>(step)) {
            if (classify(sc.spec, state, sc.eps_class).is_definite()) continue;
            std::vector<StateVector> states;
            std::vector<double> weights;
            for (auto& row : overlap_table(sc.spec, state)) {
                if (row.weight < kEpsNull) continue;
                states.push_back(std::move(row.candidate));
                weights.push_back(row.weight);
            }
            if (weights.empty())
                throw HungUniverse("mixed state has no overlap with any admissible candidate");
            const std::vector<double> probs = relative_probabilities(weights);
            double total = 0.0;
            for (std::size_t b = 0; b < probs.size(); ++b) {
                if (probs[b] <= 0.0) continue;
                total += probs[b] *
                         collapse_walk(sc, std::move(states[b]), i + 1, branches, target);
            }
            return total;
        } else {
            const auto& observe = std::get<ObserveStep>(step);
            const char* context = observe.tag.empty() ? "observe" : observe.tag.c_str();
            classify_or_throw(sc, state, context, i + 1);
        }
    }

    // Leaf. A definite leaf contributes exactly its qualia; a mixed leaf
    // (schedule without terminal enforcement) contributes its would-be
    // projection share, which keeps this evaluator consistent with the
    // deferred one on enforcement-free schedules.
    Classification cls = classify(sc.spec, state, sc.eps_class);
    if (cls.is_definite()) return (*cls.definite == target) ? 1.0 : 0.0;
    return target_share(sc, state, target);
}

} // namespace

double deferred_probability(const Scenario& sc, const QualiaLabel& target) {
    require_valid(sc);
    if (!qualia_declared(sc.spec, target))
        throw ScenarioError("target qualia '" + target.token + "' is not declared");

    StateVector state = normalize(sc.initial_state);
    for (std::size_t i = 0; i < sc.schedule.size(); ++i) {
        const Step& step = sc.schedule[i];
        if (const auto* u = std::get_if<UnitaryStep>(&step)) {
            state = normalize(apply_unitary(*u, state));
        } else if (const auto* r = std::get_if<RecordCoupling>(&step)) {
            state = append_record(*r, state);
        } else if (std::holds_alternative<EnforceStep>(step)) {
            throw NotDeferred("schedule step " + std::to_string(i + 1) +
                              " is an enforce step; deferred evaluation requires pure "
                              "unitary/record evolution");
        }
        // Observe steps do not disturb the state.
    }
    return target_share(sc, state, target);
}

double collapse_probability(const Scenario& sc, const QualiaLabel& target) {
    require_valid(sc);
    if (!qualia_declared(sc.spec, target))
        throw ScenarioError("target qualia '" + target.token + "' is not declared");
    std::size_t branches = 0;
    return collapse_walk(sc, normalize(sc.initial_state), 0, branches, target);
}

Scenario without_enforcement(const Scenario& sc) {
    Scenario out = sc;
    out.schedule.clear();
    for (const auto& step : sc.schedule)
        if (!std::holds_alternative<EnforceStep>(step)) out.schedule.push_back(step);
    return out;
}

} // namespace qsim
