#include "qsim/experiments.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsim {

namespace {

BasisLabel label(std::initializer_list<const char*> tokens) {
    BasisLabel out;
    for (const char* t : tokens) out.tokens.emplace_back(t);
    return out;
}

} // namespace

Scenario stern_gerlach_scenario(const SternGerlachParams& p) {
    if (!(p.p_up >= 0.0 && p.p_up <= 1.0))
        throw ScenarioError("p_up must lie in [0, 1]");

    const BasisLabel plus_b = label({"+", "B"});
    const BasisLabel minus_b = label({"-", "B"});
    const BasisLabel plus_g = label({"+", "G"});
    const BasisLabel minus_r = label({"-", "R"});

    Scenario sc;
    sc.name = "stern-gerlach";
    sc.description = "spin preparation, color-coded detection, terminal enforcement";
    sc.alphabet.positions = {{"+", "-"}, {"B", "G", "R"}};
    sc.initial_state.amplitudes[plus_b] = 1.0;
    sc.spec.subspaces = {
        {{"Blue"}, {plus_b, minus_b}},
        {{"Green"}, {plus_g}},
        {{"Red"}, {minus_r}},
    };

    // Amplitude sqrt(p_up) stays on (+,B); the rest rotates onto (-,B).
    const double psi = std::atan2(std::sqrt(1.0 - p.p_up), std::sqrt(p.p_up));
    sc.schedule.emplace_back(UnitaryStep({plus_b, minus_b}, DenseMatrix::rotation(psi)));
    sc.schedule.emplace_back(
        UnitaryStep({plus_b, minus_b, plus_g, minus_r}, DenseMatrix::permutation({2, 3, 0, 1})));
    sc.schedule.emplace_back(EnforceStep{});
    sc.schedule.emplace_back(ObserveStep{"final"});
    return sc;
}

Scenario window_scenario(WindowPolicy policy, std::size_t n_substeps) {
    if (n_substeps < 2) throw ScenarioError("window discretization needs at least 2 substeps");

    const BasisLabel blue = label({"B"});
    const BasisLabel green = label({"G"});

    Scenario sc;
    sc.name = (policy == WindowPolicy::Threshold) ? "window-threshold" : "window-blend";
    sc.description = "interpolated color direction, every grid point admissible";
    sc.alphabet.positions = {{"B", "G"}};
    sc.initial_state.amplitudes[blue] = 1.0;

    std::vector<double> angles(n_substeps);
    for (std::size_t k = 0; k < n_substeps; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n_substeps - 1);
        angles[k] = std::atan2(t, 1.0 - t);

        StateVector direction;
        direction.amplitudes[blue] = 1.0 - t;
        direction.amplitudes[green] = t;
        QualiaLabel qualia;
        if (policy == WindowPolicy::Threshold)
            qualia.token = (t < 0.5) ? "Blue" : "Green";
        else
            qualia.token = "BlendLevel(" + std::to_string(k) + ")";
        sc.spec.extra_vectors.emplace_back(normalize(direction), std::move(qualia));
    }

    for (std::size_t k = 1; k < n_substeps; ++k) {
        sc.schedule.emplace_back(
            UnitaryStep({blue, green}, DenseMatrix::rotation(angles[k] - angles[k - 1])));
        sc.schedule.emplace_back(EnforceStep{});
    }
    return sc;
}

namespace {

BasisLabel record_string(char head, std::size_t i_count, std::size_t a_count) {
    BasisLabel out;
    out.tokens.emplace_back(1, head);
    out.tokens.insert(out.tokens.end(), i_count, "I");
    out.tokens.insert(out.tokens.end(), a_count, "A");
    return out;
}

QualiaLabel record_qualia(const BasisLabel& l) {
    std::string token;
    for (const auto& t : l.tokens) token += t;
    return {std::move(token)};
}

void check_zeno(const ZenoParams& z) {
    if (!(z.theta >= 0.0 && z.theta <= std::numbers::pi / 2.0))
        throw ScenarioError("theta must lie in [0, pi/2]");
}

Scenario zeno_base(const char* name) {
    Scenario sc;
    sc.name = name;
    sc.alphabet.positions = {{"U", "D"}, {"I"}};
    sc.alphabet.record_tokens = {"I", "A"};
    sc.initial_state.amplitudes[record_string('U', 1, 0)] = 1.0;
    return sc;
}

} // namespace

QualiaLabel zeno_survival_qualia(std::size_t pulses) {
    return record_qualia(record_string('U', pulses + 1, 0));
}

Scenario zeno_scenario(const ZenoParams& z, bool deferred) {
    check_zeno(z);
    Scenario sc = zeno_base(deferred ? "zeno-deferred" : "zeno-pulsed");
    sc.description = deferred ? "pulsed decay, records kept in superposition until the end"
                              : "pulsed decay, enforcement after every record";

    // Every record string reachable at any stage gets its own qualia:
    // undecayed U I^j, and D I^m A^j for a decay at pulse m.
    const std::size_t n = z.pulses;
    for (std::size_t j = 1; j <= n + 1; ++j) {
        const BasisLabel l = record_string('U', j, 0);
        sc.spec.subspaces.push_back({record_qualia(l), {l}});
    }
    for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t j = 1; j + m <= n + 1; ++j) {
            const BasisLabel l = record_string('D', m, j);
            sc.spec.subspaces.push_back({record_qualia(l), {l}});
        }
    }

    for (std::size_t pulse = 1; pulse <= n; ++pulse) {
        sc.schedule.emplace_back(UnitaryStep(
            {record_string('U', pulse, 0), record_string('D', pulse, 0)},
            DenseMatrix::rotation(z.theta)));
        sc.schedule.emplace_back(RecordCoupling{0, {{"U", "I"}, {"D", "A"}}});
        if (!deferred) sc.schedule.emplace_back(EnforceStep{});
    }
    if (deferred) sc.schedule.emplace_back(ObserveStep{"final"});
    return sc;
}

Scenario zeno_control_scenario(const ZenoParams& z) {
    check_zeno(z);
    Scenario sc = zeno_base("zeno-control");
    sc.description = "pulses composed with no records and no enforcement";

    const BasisLabel up = record_string('U', 1, 0);
    const BasisLabel down = record_string('D', 1, 0);
    sc.spec.subspaces = {{record_qualia(up), {up}}, {record_qualia(down), {down}}};
    for (std::size_t pulse = 1; pulse <= z.pulses; ++pulse)
        sc.schedule.emplace_back(UnitaryStep({up, down}, DenseMatrix::rotation(z.theta)));
    return sc;
}

double zeno_deferred_survival(const ZenoParams& z) {
    return deferred_probability(zeno_scenario(z, true), zeno_survival_qualia(z.pulses));
}

double zeno_collapse_survival(const ZenoParams& z) {
    return collapse_probability(zeno_scenario(z, false), zeno_survival_qualia(z.pulses));
}

double zeno_control_survival(const ZenoParams& z) {
    return deferred_probability(zeno_control_scenario(z), zeno_survival_qualia(0));
}

std::pair<double, double> everett_comparator(double p_up) {
    if (!(p_up >= 0.0 && p_up <= 1.0))
        throw ScenarioError("p_up must lie in [0, 1]");
    if (p_up == 0.0 || p_up == 1.0)
        throw DegenerateBranching("only one branch exists at p_up = " + std::to_string(p_up));
    return {0.5, p_up};
}

Scenario hangup_scenario() {
    const BasisLabel a = label({"A"});
    const BasisLabel x = label({"X"});

    Scenario sc;
    sc.name = "hangup";
    sc.description = "a swap strands the state orthogonal to every admissible candidate";
    sc.alphabet.positions = {{"A", "X"}};
    sc.initial_state.amplitudes[a] = 1.0;
    sc.spec.subspaces = {{{"Start"}, {a}}};
    sc.schedule.emplace_back(UnitaryStep({a, x}, DenseMatrix::permutation({1, 0})));
    sc.schedule.emplace_back(EnforceStep{});
    return sc;
}

Scenario phi_rescue_scenario(std::size_t count, double overlap) {
    if (count < 1) throw ScenarioError("rescue needs at least one admissible vector");
    if (!(overlap > 0.0 && overlap < 1.0))
        throw ScenarioError("overlap must lie in (0, 1)");

    Scenario sc = hangup_scenario();
    sc.name = "phi-rescue";
    sc.description = "the stranded direction overlaps declared admissible vectors";
    const BasisLabel x = label({"X"});
    const double rest = std::sqrt(1.0 - overlap * overlap);
    for (std::size_t j = 1; j <= count; ++j) {
        const std::string y = "Y" + std::to_string(j);
        sc.alphabet.positions[0].insert(y);
        StateVector phi;
        phi.amplitudes[x] = overlap;
        phi.amplitudes[label({y.c_str()})] = rest;
        sc.spec.extra_vectors.emplace_back(std::move(phi), QualiaLabel{"Phi" + std::to_string(j)});
    }
    sc.schedule.emplace_back(ObserveStep{"final"});
    return sc;
}

Scenario phi_overlap_scenario() {
    const BasisLabel a = label({"A"});
    const BasisLabel b = label({"B"});
    const BasisLabel h = label({"H"});

    Scenario sc;
    sc.name = "phi-overlap";
    sc.description = "two admissible vectors at squared-overlap ratio 1 : 0.999^2";
    sc.alphabet.positions = {{"A", "B", "H"}};
    sc.initial_state.amplitudes[a] = 1.0;

    StateVector original;
    original.amplitudes[a] = 1.0;
    StateVector phi;
    phi.amplitudes[a] = 0.999;
    phi.amplitudes[b] = std::sqrt(1.0 - 0.999 * 0.999);
    sc.spec.extra_vectors.emplace_back(std::move(original), QualiaLabel{"Original"});
    sc.spec.extra_vectors.emplace_back(std::move(phi), QualiaLabel{"Phi"});

    // A small rotation off |A> makes the state mixed; the common cos^2 factor
    // cancels in the relative probabilities.
    sc.schedule.emplace_back(UnitaryStep({a, h}, DenseMatrix::rotation(0.1)));
    sc.schedule.emplace_back(EnforceStep{});
    sc.schedule.emplace_back(ObserveStep{"final"});
    return sc;
}

} // namespace qsim
