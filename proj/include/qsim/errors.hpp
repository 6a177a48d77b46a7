// errors.hpp
// Exception types shared across the simulator modules.

#pragma once

#include <stdexcept>
#include <string>

namespace qsim {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two states do not live over the same token alphabet (label widths differ).
struct AlphabetMismatch : SimError {
    using SimError::SimError;
};

// Attempt to normalize a vector of (numerically) zero length.
struct NullVector : SimError {
    using SimError::SimError;
};

// Matrix handed to UnitaryStep fails the U†U = I check.
struct NotUnitary : SimError {
    using SimError::SimError;
};

// A populated basis label has no record rule for its token.
struct IncompleteCoupling : SimError {
    using SimError::SimError;
};

// Classifier input was not a unit vector.
struct NotNormalized : SimError {
    using SimError::SimError;
};

// A mixed state has zero overlap with every admissible candidate; the
// enforcement operator has no valid target. Never resolved silently.
struct HungUniverse : SimError {
    using SimError::SimError;
};

// An observe step met a mixed state (a scenario bug).
struct ObservedMixed : SimError {
    using SimError::SimError;
};

// Deferred evaluation requested on a schedule that contains enforcement.
struct NotDeferred : SimError {
    using SimError::SimError;
};

// Branch-count comparison is undefined when only one branch exists.
struct DegenerateBranching : SimError {
    using SimError::SimError;
};

// Malformed scenario: schema, invariant, or structural misuse.
struct ScenarioError : SimError {
    using SimError::SimError;
};

} // namespace qsim
