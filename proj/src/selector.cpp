#include "qsim/selector.hpp"

#include <cmath>

namespace qsim {

std::vector<double> relative_probabilities(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            throw ScenarioError("candidate weight must be finite and nonnegative");
        total += w;
    }
    if (total <= kEpsNull)
        throw HungUniverse("every candidate weight is below the null threshold");
    std::vector<double> probs(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) probs[i] = weights[i] / total;
    return probs;
}

std::size_t pick_index(const std::vector<double>& probs, double draw) {
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cum += probs[i];
        if (draw < cum) return i;
    }
    return probs.size() - 1; // cumulative sum fell short of 1 by rounding
}

std::size_t sample_candidate(const std::vector<double>& probs, RngStream& rng) {
    return pick_index(probs, rng.next_unit());
}

std::pair<StateVector, ProjectionRecord> enforce(const AdmissibleSpec& spec,
                                                 const StateVector& s, RngStream& rng,
                                                 double eps_class) {
    ProjectionRecord record;
    record.rng_draw = rng.next_unit();

    if (classify(spec, s, eps_class).is_definite()) return {s, std::move(record)};

    std::vector<StateVector> states;
    std::vector<double> weights;
    for (auto& row : overlap_table(spec, s)) {
        if (row.weight < kEpsNull) continue;
        record.candidates.push_back(row.ref);
        states.push_back(std::move(row.candidate));
        weights.push_back(row.weight);
    }
    if (weights.empty())
        throw HungUniverse("mixed state has no overlap with any admissible candidate");

    record.weights = relative_probabilities(weights);
    const std::size_t idx = pick_index(record.weights, record.rng_draw);
    record.occurred = true;
    record.chosen = record.candidates[idx];
    return {std::move(states[idx]), std::move(record)};
}

} // namespace qsim
