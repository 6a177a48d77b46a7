// experiments.hpp
// Prebuilt scenarios: the color-coded Stern-Gerlach runs, the pulsed
// two-level decay with growing detector records (deferred or per-pulse
// enforcement), the interpolated color window, and the hung-universe
// pathology with its overlap-rescue variants.

#pragma once

#include <cstddef>
#include <utility>

#include "qsim/dynamics.hpp"

namespace qsim {

struct SternGerlachParams {
    double p_up = 0.5; // Born weight of the spin-up preparation, in [0,1]
};

struct ZenoParams {
    double theta = 0.0;     // rotation per pulse, radians, in [0, pi/2]
    std::size_t pulses = 0; // N >= 0
};

enum class WindowPolicy {
    Threshold, // interpolated direction reads Blue below the midpoint, Green from it on
    Blend,     // every intermediate direction carries its own BlendLevel(k) qualia
};

// Spin preparation with amplitude sqrt(p_up) on (+,B), detection mapping
// (+,B)->(+,G) and (-,B)->(-,R), then Enforce + Observe. Qualia: Blue over
// both beam labels, Green over (+,G), Red over (-,R).
Scenario stern_gerlach_scenario(const SternGerlachParams& p);

// n_substeps-point discretization of the blue-to-green interpolation
// (1-t)|B> + t|G>, t = k/(n-1). Every grid direction is declared admissible
// via extra vectors, so each per-substep Enforce is a no-op.
Scenario window_scenario(WindowPolicy policy, std::size_t n_substeps);

// Pulsed decay: per pulse, a controlled rotation theta on the
// undecayed-record branch, then a record append {U->I, D->A}. deferred=true
// keeps all branches unitary and observes once at the end; deferred=false
// enforces after every record. Every reachable record string has its own
// singleton qualia subspace.
Scenario zeno_scenario(const ZenoParams& z, bool deferred);

// Same pulses with no record coupling and no enforcement: the rotations
// compose, survival is cos^2(N*theta).
Scenario zeno_control_scenario(const ZenoParams& z);

// Qualia carried by the fully undecayed record after `pulses` pulses
// ("U" followed by pulses+1 "I" symbols).
QualiaLabel zeno_survival_qualia(std::size_t pulses);

// P(undecayed) via pure unitary evolution of the deferred scenario.
double zeno_deferred_survival(const ZenoParams& z);
// P(undecayed) via branch enumeration of the per-pulse-enforced scenario.
double zeno_collapse_survival(const ZenoParams& z);
// P(undecayed) with the pulses composed and never measured.
double zeno_control_survival(const ZenoParams& z);

// (0.5, p_up): the equal-branch-count prediction next to the Born weight the
// ensembles actually reproduce. Throws DegenerateBranching when p_up is 0 or
// 1 (a single branch admits no counting argument).
std::pair<double, double> everett_comparator(double p_up);

// A swap drives the state orthogonal to the only declared subspace, so the
// enforce step has no candidate and every run raises HungUniverse.
Scenario hangup_scenario();

// hangup_scenario plus `count` admissible unit vectors, each with squared
// overlap `overlap`^2 against the stranded direction; enforcement then
// samples them uniformly. count >= 1.
Scenario phi_rescue_scenario(std::size_t count, double overlap = 0.999);

// Two admissible vectors with squared-overlap ratio 1 : 0.999^2 against a
// slightly rotated state; projection probabilities are exactly
// 1/(1+0.999^2) and 0.999^2/(1+0.999^2).
Scenario phi_overlap_scenario();

} // namespace qsim
