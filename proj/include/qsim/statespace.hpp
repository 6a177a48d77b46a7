// statespace.hpp
// Sparse complex state vectors over named basis labels, block unitaries, and
// record couplings that grow the label space (the detector-tape mechanism).
// All types are immutable values after construction; the free functions are
// pure, so everything here can be shared across threads without coordination.

#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qsim/errors.hpp"

namespace qsim {

using Complex = std::complex<double>;

// Tolerances. Prune/null thresholds apply to squared magnitudes.
inline constexpr double kEpsNorm = 1e-10;
inline constexpr double kEpsUnitary = 1e-10;
inline constexpr double kEpsPrune = 1e-15;
inline constexpr double kEpsNull = 1e-24;

// Ordered token list naming one basis vector, e.g. {"+","B"} or {"U","I","I"}.
// Equality and ordering are lexicographic over the tokens.
struct BasisLabel {
    std::vector<std::string> tokens;

    auto operator<=>(const BasisLabel&) const = default;

    // Display form: tokens joined with commas, "+,B".
    std::string str() const;
    // Tokens joined with single spaces, "+ B"; the JSON key form.
    std::string key() const;
    // Inverse of key(); rejects empty tokens.
    static BasisLabel from_key(const std::string& key);
};

// Sparse map label -> amplitude. Amplitudes with |a|^2 < kEpsPrune are not
// stored. The map is ordered, so iteration (and therefore every accumulation
// in this module) happens in a canonical label order.
struct StateVector {
    std::map<BasisLabel, Complex> amplitudes;

    double norm_sq() const;
    double norm() const;
    Complex amplitude(const BasisLabel& label) const; // 0 when absent
    bool empty() const { return amplitudes.empty(); }

    // Copy with sub-threshold amplitudes dropped.
    StateVector pruned() const;
    // Copy restricted to the given label set (no renormalization).
    StateVector restricted_to(const std::set<BasisLabel>& labels) const;
    // Copy scaled by a complex factor.
    StateVector scaled(Complex factor) const;
};

// Bitwise amplitude equality (same labels, same bit patterns).
bool exact_equal(const StateVector& a, const StateVector& b);

// Small dense complex matrix, row-major.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<Complex> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t dim) : n(dim), a(dim * dim) {}

    Complex& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static DenseMatrix identity(std::size_t dim);
    // 2x2 real rotation: |0> -> cos t |0> + sin t |1>.
    static DenseMatrix rotation(double theta);
    // Permutation matrix sending basis slot i to slot perm[i].
    static DenseMatrix permutation(const std::vector<std::size_t>& perm);
};

// A unitary acting on an explicit ordered subset of basis labels and as the
// identity everywhere else. The matrix is checked (U†U = I within
// kEpsUnitary) at construction; apply_unitary never re-checks.
class UnitaryStep {
public:
    UnitaryStep(std::vector<BasisLabel> domain, DenseMatrix matrix);

    const std::vector<BasisLabel>& domain() const { return domain_; }
    const DenseMatrix& matrix() const { return matrix_; }

private:
    std::vector<BasisLabel> domain_;
    DenseMatrix matrix_;
};

// Appends one record token to every populated label, chosen by the token at
// `position`. Amplitudes are moved, never combined, so the norm is preserved
// exactly.
struct RecordCoupling {
    std::size_t position = 0;
    std::map<std::string, std::string> rules;
};

// Declared token sets per label position, plus the tokens record couplings
// may append beyond the base positions.
struct Alphabet {
    std::vector<std::set<std::string>> positions;
    std::set<std::string> record_tokens;

    bool contains(const BasisLabel& label) const;
};

// Hermitian inner product <a|b> over the union of populated labels.
// Throws AlphabetMismatch when the two states have different label widths.
Complex inner_product(const StateVector& a, const StateVector& b);

// s / ||s||. Throws NullVector when ||s||^2 <= kEpsNull.
StateVector normalize(const StateVector& s);

// Amplitudes on u.domain() transformed by u.matrix(); all others untouched.
StateVector apply_unitary(const UnitaryStep& u, const StateVector& s);

// Throws IncompleteCoupling when a populated label has no applicable rule.
StateVector append_record(const RecordCoupling& c, const StateVector& s);

} // namespace qsim
