#include "qsim/consciousness.hpp"

#include <cmath>

namespace qsim {

std::vector<std::string> AdmissibleSpec::validate() const {
    std::vector<std::string> findings;

    std::set<BasisLabel> seen;
    for (const auto& [qualia, labels] : subspaces) {
        if (labels.empty())
            findings.push_back("subspace '" + qualia.token + "' is empty");
        for (const auto& label : labels) {
            if (!seen.insert(label).second)
                findings.push_back("subspaces not disjoint: label '" + label.str() +
                                   "' appears more than once");
        }
    }

    std::set<std::string> qualia_seen;
    for (const auto& [qualia, labels] : subspaces)
        if (!qualia_seen.insert(qualia.token).second)
            findings.push_back("duplicate subspace qualia '" + qualia.token + "'");

    for (std::size_t i = 0; i < extra_vectors.size(); ++i) {
        const double nsq = extra_vectors[i].first.norm_sq();
        if (std::abs(nsq - 1.0) > kEpsNorm)
            findings.push_back("extra vector " + std::to_string(i) + " ('" +
                               extra_vectors[i].second.token + "') is not unit norm");
    }

    if (subspaces.empty() && extra_vectors.empty())
        findings.push_back("no admissible entity declared; every enforcement would hang");

    return findings;
}

std::string CandidateRef::str() const {
    return (kind == Kind::Subspace ? "subspace:" : "extra:") + qualia.token;
}

namespace {

void check_unit(const StateVector& s) {
    if (std::abs(s.norm_sq() - 1.0) > kNormGuard)
        throw NotNormalized("state is not unit-normalized (|s|^2 = " +
                            std::to_string(s.norm_sq()) + ")");
}

// Squared projection mass of s onto a label set.
double subspace_mass(const std::set<BasisLabel>& labels, const StateVector& s) {
    double mass = 0.0;
    for (const auto& label : labels) mass += std::norm(s.amplitude(label));
    return mass;
}

} // namespace

Classification classify(const AdmissibleSpec& spec, const StateVector& s, double eps_class) {
    check_unit(s);
    const double threshold = 1.0 - eps_class;

    bool found = false;
    double best_weight = 0.0;
    QualiaLabel best_qualia;

    auto consider = [&](double weight, const QualiaLabel& qualia) {
        if (weight <= threshold) return;
        // Strictly-greater keeps declaration order on exact ties.
        if (!found || weight > best_weight) {
            found = true;
            best_weight = weight;
            best_qualia = qualia;
        }
    };

    for (const auto& [qualia, labels] : spec.subspaces)
        consider(subspace_mass(labels, s), qualia);
    for (const auto& [vec, qualia] : spec.extra_vectors)
        consider(std::norm(inner_product(vec, s)), qualia);

    if (!found) return {};
    return {best_qualia};
}

std::vector<OverlapRow> overlap_table(const AdmissibleSpec& spec, const StateVector& s) {
    check_unit(s);
    std::vector<OverlapRow> rows;

    for (std::size_t i = 0; i < spec.subspaces.size(); ++i) {
        const auto& [qualia, labels] = spec.subspaces[i];
        StateVector projection = s.restricted_to(labels);
        const double mass = projection.norm_sq();
        if (mass < kEpsNull) continue;
        OverlapRow row;
        row.ref = {CandidateRef::Kind::Subspace, i, qualia};
        row.candidate = projection.scaled(1.0 / std::sqrt(mass)).pruned();
        // <candidate|s> = ||projection||, real and nonnegative.
        row.amplitude = Complex{std::sqrt(mass), 0.0};
        row.weight = mass;
        rows.push_back(std::move(row));
    }

    for (std::size_t i = 0; i < spec.extra_vectors.size(); ++i) {
        const auto& [vec, qualia] = spec.extra_vectors[i];
        OverlapRow row;
        row.ref = {CandidateRef::Kind::Extra, i, qualia};
        row.candidate = vec;
        row.amplitude = inner_product(vec, s);
        row.weight = std::norm(row.amplitude);
        rows.push_back(std::move(row));
    }

    return rows;
}

} // namespace qsim
