#pragma once

#include "hepp/model.hpp"
#include "hepp/qstate.hpp"

#include <array>

namespace hepp {

enum class Party { Alice, Bob };

/// Heralding pattern: one Alice detector (1-4) and one Bob detector (5-8).
struct DetectorPattern {
    int alice = 1;
    int bob = 5;
};

enum class OutcomeClass { BothSuccess, Fail1Success2, Success1Fail2, BothFail };

const char* outcome_class_name(OutcomeClass c);

/// PBS as a polarization-controlled NOT on the spatial qubit. Output spatial
/// 0 is mode a3/b3, output 1 is a4/b4.
SubsystemOp pbs_parity(Party party);

/// Hadamard on one party's polarization qubit (the QWP).
SubsystemOp qwp_hadamard(Party party);

/// Spatial parity projectors after the PBS: success keeps a3b3/a4b4,
/// failure keeps a3b4/a4b3.
SubsystemOp step1_success_projector();
SubsystemOp step1_failure_projector();

/// Net step-2 unit for one party: isometry from (pol, time, spatial) into
/// (pol, detector). Column index is pol*4 + time*2 + spatial; detector is a
/// 4-level subsystem (local index 0..3 maps to D1..D4 for Alice, D5..D8 for
/// Bob). All phases are +1.
struct Step2Unit {
    Matrix matrix;  // 8x8
    std::vector<std::string> targets;
    std::vector<Subsystem> outputs;
};
Step2Unit step2_unit(Party party);

OutcomeClass classify(DetectorPattern pattern);

std::array<DetectorPattern, 4> patterns_of(OutcomeClass c);
std::array<DetectorPattern, 16> all_patterns();

/// Projector onto one detector pattern, on subsystems (A.det, B.det).
SubsystemOp detector_projector(DetectorPattern pattern);

}  // namespace hepp
