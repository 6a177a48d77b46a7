#include "qsim/statespace.hpp"

#include <cmath>
#include <utility>

namespace qsim {

std::string BasisLabel::str() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ',';
        out += tokens[i];
    }
    return out;
}

std::string BasisLabel::key() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

BasisLabel BasisLabel::from_key(const std::string& key) {
    BasisLabel label;
    std::string token;
    for (char ch : key) {
        if (ch == ' ') {
            if (token.empty())
                throw ScenarioError("empty token in basis label '" + key + "'");
            label.tokens.push_back(std::move(token));
            token.clear();
        } else {
            token += ch;
        }
    }
    if (token.empty())
        throw ScenarioError("empty token in basis label '" + key + "'");
    label.tokens.push_back(std::move(token));
    return label;
}

double StateVector::norm_sq() const {
    double sum = 0.0;
    for (const auto& [label, amp] : amplitudes) sum += std::norm(amp);
    return sum;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

Complex StateVector::amplitude(const BasisLabel& label) const {
    auto it = amplitudes.find(label);
    return it == amplitudes.end() ? Complex{0.0, 0.0} : it->second;
}

StateVector StateVector::pruned() const {
    StateVector out;
    for (const auto& [label, amp] : amplitudes)
        if (std::norm(amp) >= kEpsPrune) out.amplitudes.emplace(label, amp);
    return out;
}

StateVector StateVector::restricted_to(const std::set<BasisLabel>& labels) const {
    StateVector out;
    for (const auto& label : labels) {
        auto it = amplitudes.find(label);
        if (it != amplitudes.end()) out.amplitudes.emplace(label, it->second);
    }
    return out;
}

StateVector StateVector::scaled(Complex factor) const {
    StateVector out;
    for (const auto& [label, amp] : amplitudes) out.amplitudes.emplace(label, amp * factor);
    return out;
}

bool exact_equal(const StateVector& a, const StateVector& b) {
    if (a.amplitudes.size() != b.amplitudes.size()) return false;
    auto ia = a.amplitudes.begin();
    auto ib = b.amplitudes.begin();
    for (; ia != a.amplitudes.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        // Bit-level comparison; amplitudes are finite by invariant.
        if (ia->second.real() != ib->second.real() || std::signbit(ia->second.real()) != std::signbit(ib->second.real()))
            return false;
        if (ia->second.imag() != ib->second.imag() || std::signbit(ia->second.imag()) != std::signbit(ib->second.imag()))
            return false;
    }
    return true;
}

DenseMatrix DenseMatrix::identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::rotation(double theta) {
    DenseMatrix m(2);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    m.at(0, 0) = c;
    m.at(0, 1) = -s;
    m.at(1, 0) = s;
    m.at(1, 1) = c;
    return m;
}

DenseMatrix DenseMatrix::permutation(const std::vector<std::size_t>& perm) {
    DenseMatrix m(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) m.at(perm[i], i) = 1.0;
    return m;
}

UnitaryStep::UnitaryStep(std::vector<BasisLabel> domain, DenseMatrix matrix)
    : domain_(std::move(domain)), matrix_(std::move(matrix)) {
    const std::size_t n = domain_.size();
    if (matrix_.n != n)
        throw NotUnitary("matrix dimension " + std::to_string(matrix_.n) +
                         " does not match domain size " + std::to_string(n));
    std::set<BasisLabel> seen;
    for (const auto& label : domain_)
        if (!seen.insert(label).second)
            throw ScenarioError("duplicate label '" + label.str() + "' in unitary domain");
    for (const auto& entry : matrix_.a)
        if (!std::isfinite(entry.real()) || !std::isfinite(entry.imag()))
            throw NotUnitary("matrix entry is not finite");
    // U†U = I within kEpsUnitary.
    double max_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += std::conj(matrix_.at(k, i)) * matrix_.at(k, j);
            const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            max_dev = std::max(max_dev, std::abs(acc - expect));
        }
    }
    if (max_dev > kEpsUnitary)
        throw NotUnitary("matrix is not unitary (max |U†U - I| = " + std::to_string(max_dev) + ")");
}

bool Alphabet::contains(const BasisLabel& label) const {
    if (label.tokens.empty()) return false;
    for (std::size_t i = 0; i < label.tokens.size(); ++i) {
        if (i < positions.size()) {
            if (!positions[i].count(label.tokens[i])) return false;
        } else {
            if (!record_tokens.count(label.tokens[i])) return false;
        }
    }
    return true;
}

namespace {

// All labels of both states must share one token width; the width of the
// first populated label is the reference.
void check_same_width(const StateVector& a, const StateVector& b) {
    std::size_t width = 0;
    bool have = false;
    for (const StateVector* s : {&a, &b}) {
        for (const auto& [label, amp] : s->amplitudes) {
            if (!have) {
                width = label.tokens.size();
                have = true;
            } else if (label.tokens.size() != width) {
                throw AlphabetMismatch("states mix basis labels of width " + std::to_string(width) +
                                       " and " + std::to_string(label.tokens.size()));
            }
        }
    }
}

} // namespace

Complex inner_product(const StateVector& a, const StateVector& b) {
    check_same_width(a, b);
    // Labels populated on only one side contribute zero, so the union sum
    // reduces to a sum over the smaller map.
    const StateVector& lead = (a.amplitudes.size() <= b.amplitudes.size()) ? a : b;
    const StateVector& other = (&lead == &a) ? b : a;
    Complex sum = 0.0;
    for (const auto& [label, amp] : lead.amplitudes) {
        auto it = other.amplitudes.find(label);
        if (it == other.amplitudes.end()) continue;
        if (&lead == &a)
            sum += std::conj(amp) * it->second;
        else
            sum += std::conj(it->second) * amp;
    }
    return sum;
}

StateVector normalize(const StateVector& s) {
    const double nsq = s.norm_sq();
    if (nsq <= kEpsNull) throw NullVector("cannot normalize a null vector");
    return s.scaled(1.0 / std::sqrt(nsq)).pruned();
}

StateVector apply_unitary(const UnitaryStep& u, const StateVector& s) {
    const auto& domain = u.domain();
    const std::size_t n = domain.size();

    std::vector<Complex> in(n, Complex{0.0, 0.0});
    bool touched = false;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = s.amplitudes.find(domain[i]);
        if (it != s.amplitudes.end()) {
            in[i] = it->second;
            touched = true;
        }
    }
    if (!touched) return s; // block carries no amplitude; identity elsewhere

    StateVector out = s;
    for (const auto& label : domain) out.amplitudes.erase(label);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += u.matrix().at(i, j) * in[j];
        if (std::norm(acc) >= kEpsPrune) out.amplitudes[domain[i]] = acc;
    }
    return out;
}

StateVector append_record(const RecordCoupling& c, const StateVector& s) {
    StateVector out;
    for (const auto& [label, amp] : s.amplitudes) {
        if (c.position >= label.tokens.size())
            throw IncompleteCoupling("record position " + std::to_string(c.position) +
                                     " outside label '" + label.str() + "'");
        auto rule = c.rules.find(label.tokens[c.position]);
        if (rule == c.rules.end())
            throw IncompleteCoupling("no record rule for token '" + label.tokens[c.position] +
                                     "' in label '" + label.str() + "'");
        BasisLabel extended = label;
        extended.tokens.push_back(rule->second);
        out.amplitudes.emplace(std::move(extended), amp);
    }
    return out;
}

} // namespace qsim
