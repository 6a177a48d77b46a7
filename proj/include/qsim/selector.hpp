// selector.hpp
// The non-linear enforcement operator: definite states pass through
// untouched (bit-identical); mixed states are projected onto one admissible
// candidate sampled with squared overlaps as relative probabilities. The
// operator is idempotent and consumes exactly one rng draw per call, so
// trajectories replay from (seed, schedule) alone.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qsim/consciousness.hpp"
#include "qsim/rng.hpp"

namespace qsim {

struct ProjectionRecord {
    bool occurred = false;
    std::optional<CandidateRef> chosen;     // set iff occurred
    std::vector<CandidateRef> candidates;   // surviving rows, sampling order
    std::vector<double> weights;            // normalized distribution over candidates
    double rng_draw = 0.0;                  // the one draw consumed by this call
};

// weights / sum(weights). Requires nonnegative entries; throws HungUniverse
// when the total is below kEpsNull.
std::vector<double> relative_probabilities(const std::vector<double>& weights);

// Inverse-CDF pick for a draw in [0,1).
std::size_t pick_index(const std::vector<double>& probs, double draw);

// Inverse-CDF draw consuming one rng value.
std::size_t sample_candidate(const std::vector<double>& probs, RngStream& rng);

// Enforcement. Candidate weights below kEpsNull are dropped before
// normalization; a mixed state with no surviving candidate throws
// HungUniverse. The returned state always classifies definite.
std::pair<StateVector, ProjectionRecord> enforce(const AdmissibleSpec& spec,
                                                 const StateVector& s, RngStream& rng,
                                                 double eps_class = kEpsClass);

} // namespace qsim
