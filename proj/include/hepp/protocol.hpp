#pragma once

#include "hepp/model.hpp"
#include "hepp/optics.hpp"

#include <array>
#include <utility>
#include <vector>

namespace hepp {

struct OutcomeReport {
    OutcomeClass cls = OutcomeClass::BothSuccess;
    double probability = 0;
    BellCoeffs pol_coeffs;
    double fidelity = 0;  // weight of Phi+
    double bell_offdiag_residual = 0;
    bool zero = false;
};

enum class ReusePolicy { KeepBestBranch, KeepBothSuccessOnly };

struct RoundPlan {
    int rounds = 1;
    ReusePolicy reuse_policy = ReusePolicy::KeepBothSuccessOnly;
};

/// Full two-step pipeline on the 64-dimensional input; reports all four
/// detector outcome classes in enum order.
std::array<OutcomeReport, 4> run(const NoiseParams& np, NoiseVariant model);

/// Same pipeline with an explicit polarization pair (multi-round reuse).
std::array<OutcomeReport, 4> run_with_pol(const MixedState& pol, double ps, double pt,
                                          NoiseVariant model);

/// As run_with_pol but also returns the conditional polarization states
/// (normalized; zero matrix on a dead branch).
std::array<std::pair<OutcomeReport, MixedState>, 4> run_with_pol_states(
    const MixedState& pol, double ps, double pt, NoiseVariant model);

struct Step1Report {
    double probability = 0;
    BellCoeffs pol_coeffs;
    double bell_offdiag_residual = 0;
    bool zero = false;
};

/// Step 1 in isolation: spatial-parity success and failure branches before
/// any step-2 optics.
std::pair<Step1Report, Step1Report> step1_only(const NoiseParams& np, NoiseVariant model);

/// Multi-round purification reusing the selected branch's conditional
/// polarization state, with fresh spatial/time mixtures each round.
std::vector<std::array<OutcomeReport, 4>> iterate(const NoiseParams& np, NoiseVariant model,
                                                  const RoundPlan& plan);

}  // namespace hepp
