// consciousness.hpp
// The classifier: decides whether a state vector is a definite state (and
// which qualia label it carries) or a mixed, inadmissible state. Labeled
// states are declared, not derived; they need not be orthogonal and do not
// span the space, so squared overlaps are relative weights only.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsim/statespace.hpp"

namespace qsim {

// Membership tolerance: a state counts as definite when a candidate holds
// all but eps_class of its squared norm. Configurable per scenario.
inline constexpr double kEpsClass = 1e-9;

// Unit-norm guard on classifier inputs.
inline constexpr double kNormGuard = 1e-8;

// Opaque token naming one definite state of awareness. The token "phi" is
// reserved for the null state (no sentient observers, e.g. the vacuum).
struct QualiaLabel {
    std::string token;

    auto operator<=>(const QualiaLabel&) const = default;

    static QualiaLabel null() { return {"phi"}; }
};

// The declared admissible structure: disjoint label subspaces, each carrying
// one qualia label, plus explicitly declared admissible unit vectors that
// need not be orthogonal to anything.
struct AdmissibleSpec {
    std::vector<std::pair<QualiaLabel, std::set<BasisLabel>>> subspaces;
    std::vector<std::pair<StateVector, QualiaLabel>> extra_vectors;

    // Invariant findings; empty when valid.
    std::vector<std::string> validate() const;
};

// Stable handle to one admissible entity, in declaration order (subspaces
// first, then extra vectors).
struct CandidateRef {
    enum class Kind { Subspace, Extra };

    Kind kind = Kind::Subspace;
    std::size_t index = 0; // position within its own list
    QualiaLabel qualia;

    std::string str() const;
};

struct OverlapRow {
    CandidateRef ref;
    StateVector candidate; // unit vector
    Complex amplitude;     // <candidate|s>
    double weight;         // |amplitude|^2
};

struct Classification {
    std::optional<QualiaLabel> definite; // empty means mixed

    bool is_definite() const { return definite.has_value(); }
};

// Definite iff some subspace holds squared projection > 1 - eps_class or
// some extra vector has |<v|s>|^2 > 1 - eps_class. When several entities
// pass, the highest overlap wins; ties break by declaration order.
// Throws NotNormalized unless s is unit within kNormGuard.
Classification classify(const AdmissibleSpec& spec, const StateVector& s,
                        double eps_class = kEpsClass);

// One row per candidate: the normalized projection of s onto each subspace
// (omitted when the projection mass is below kEpsNull) and each extra vector
// verbatim. Weights need not sum to 1.
std::vector<OverlapRow> overlap_table(const AdmissibleSpec& spec, const StateVector& s);

} // namespace qsim
