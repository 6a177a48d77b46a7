// dynamics.hpp
// Scenario schedules and trajectory execution: unitary/record steps
// interleaved with enforcement, plus analytic evaluators that compute exact
// outcome probabilities without sampling (deferred evolution vs per-step
// collapse). Trajectories are embarrassingly parallel; each owns a private
// rng stream derived from (base seed, trajectory index).

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qsim/selector.hpp"

namespace qsim {

struct EnforceStep {};

struct ObserveStep {
    std::string tag;
};

using Step = std::variant<UnitaryStep, RecordCoupling, EnforceStep, ObserveStep>;

struct Scenario {
    std::string name;
    std::string description;
    Alphabet alphabet;
    StateVector initial_state;
    AdmissibleSpec spec;
    std::vector<Step> schedule;
    double eps_class = kEpsClass;
    double eps_norm = kEpsNorm;

    // Blocking findings; empty when runnable. The initial state must itself
    // classify definite (the world starts in a definite state).
    std::vector<std::string> validate() const;
    // Non-blocking lint findings (e.g. mixing unitaries with no enforcement).
    std::vector<std::string> lint() const;
};

struct TrajectoryResult {
    // (schedule step index, label). Entry 0 is the initial classification at
    // index 0; enforce and observe steps append entries at their 1-based
    // schedule position.
    std::vector<std::pair<std::size_t, QualiaLabel>> qualia_history;
    std::vector<ProjectionRecord> projections;
    StateVector final_state;
    std::uint64_t seed = 0;

    const QualiaLabel& terminal_qualia() const { return qualia_history.back().second; }
    std::size_t projection_events() const;
};

struct EnsembleStats {
    std::map<QualiaLabel, std::uint64_t> counts; // terminal qualia -> trajectories
    std::uint64_t trajectories = 0;
    std::uint64_t projection_events = 0;

    double frequency(const QualiaLabel& label) const;
    // Binomial 3*sqrt(f(1-f)/n) for the label's observed frequency.
    double three_sigma(const QualiaLabel& label) const;
};

TrajectoryResult run_trajectory(const Scenario& sc, std::uint64_t seed);

// n trajectories with seeds derive_trajectory_seed(base_seed, i). Counts are
// independent of worker count and completion order; when trajectories fail,
// the failure with the smallest index is rethrown with that index attached.
EnsembleStats run_ensemble(const Scenario& sc, std::uint64_t n, std::uint64_t base_seed,
                           std::size_t workers = 1);

// Exact relative probability of `target` after evolving the schedule with no
// enforcement (records stay in superposition); evaluated on the final state.
// Throws NotDeferred if the schedule contains an enforce step.
double deferred_probability(const Scenario& sc, const QualiaLabel& target);

// Exact probability of ending at `target` when every enforce step projects:
// the branch tree is enumerated and per-step conditional Born probabilities
// are multiplied along each branch.
double collapse_probability(const Scenario& sc, const QualiaLabel& target);

// Copy with every enforce step removed (control for enforcement no-op runs).
Scenario without_enforcement(const Scenario& sc);

} // namespace qsim
