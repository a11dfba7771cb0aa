#include "hepp/optics.hpp"

#include <stdexcept>

namespace hepp {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string prefix(Party p) { return p == Party::Alice ? "A." : "B."; }

}  // namespace

const char* outcome_class_name(OutcomeClass c) {
    switch (c) {
        case OutcomeClass::BothSuccess: return "both_success";
        case OutcomeClass::Fail1Success2: return "fail1_success2";
        case OutcomeClass::Success1Fail2: return "success1_fail2";
        case OutcomeClass::BothFail: return "both_fail";
    }
    return "?";
}

SubsystemOp pbs_parity(Party party) {
    // |pol, spa> -> |pol, spa XOR pol>
    Matrix m = Matrix::Zero(4, 4);
    for (int pol = 0; pol < 2; ++pol)
        for (int spa = 0; spa < 2; ++spa)
            m(pol * 2 + (spa ^ pol), pol * 2 + spa) = 1;
    return {m, {prefix(party) + "pol", prefix(party) + "spa"}};
}

SubsystemOp qwp_hadamard(Party party) {
    Matrix m(2, 2);
    m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return {m, {prefix(party) + "pol"}};
}

SubsystemOp step1_success_projector() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 1;  // a3b3, a4b4
    return {m, {"A.spa", "B.spa"}};
}

SubsystemOp step1_failure_projector() {
    Matrix m = Matrix::Zero(4, 4);
    m(1, 1) = m(2, 2) = 1;  // a3b4, a4b3
    return {m, {"A.spa", "B.spa"}};
}

Step2Unit step2_unit(Party party) {
    // Per-photon table pinned by the success/failure detector lists:
    //   output polarization = time bit (L->H, S->V)
    //   branch a3/b3: pol XOR time = 0 -> D2 (D6), = 1 -> D1 (D5)
    //   branch a4/b4: pol XOR time = 0 -> D3 (D7), = 1 -> D4 (D8)
    // Local detector index 0..3 = D1..D4 (Alice) or D5..D8 (Bob).
    Matrix m = Matrix::Zero(8, 8);
    for (int pol = 0; pol < 2; ++pol)
        for (int time = 0; time < 2; ++time)
            for (int spa = 0; spa < 2; ++spa) {
                const int out_pol = time;
                const int x = pol ^ time;
                const int det = spa == 0 ? (x ? 0 : 1) : (x ? 3 : 2);
                m(out_pol * 4 + det, pol * 4 + time * 2 + spa) = 1;
            }
    const std::string p = prefix(party);
    return {m, {p + "pol", p + "time", p + "spa"}, {{p + "pol", 2}, {p + "det", 4}}};
}

OutcomeClass classify(DetectorPattern pat) {
    if (pat.alice < 1 || pat.alice > 4 || pat.bob < 5 || pat.bob > 8)
        throw std::invalid_argument("detector pattern out of range");
    // Quoted class lists, all 16 patterns.
    static const std::array<std::array<std::array<int, 2>, 4>, 4> lists = {{
        {{{2, 6}, {1, 5}, {3, 7}, {4, 8}}},  // BothSuccess
        {{{2, 7}, {1, 8}, {3, 6}, {4, 5}}},  // Fail1Success2
        {{{1, 6}, {2, 5}, {3, 8}, {4, 7}}},  // Success1Fail2
        {{{2, 8}, {1, 7}, {3, 5}, {4, 6}}},  // BothFail
    }};
    static const OutcomeClass classes[4] = {OutcomeClass::BothSuccess, OutcomeClass::Fail1Success2,
                                            OutcomeClass::Success1Fail2, OutcomeClass::BothFail};
    for (int c = 0; c < 4; ++c)
        for (const auto& e : lists[c])
            if (e[0] == pat.alice && e[1] == pat.bob) return classes[c];
    throw std::logic_error("unclassified detector pattern");
}

std::array<DetectorPattern, 4> patterns_of(OutcomeClass c) {
    std::array<DetectorPattern, 4> out{};
    int n = 0;
    for (const auto& pat : all_patterns())
        if (classify(pat) == c) out[n++] = pat;
    return out;
}

std::array<DetectorPattern, 16> all_patterns() {
    std::array<DetectorPattern, 16> out{};
    int n = 0;
    for (int a = 1; a <= 4; ++a)
        for (int b = 5; b <= 8; ++b) out[n++] = {a, b};
    return out;
}

SubsystemOp detector_projector(DetectorPattern pat) {
    const int la = pat.alice - 1;
    const int lb = pat.bob - 5;
    Matrix m = Matrix::Zero(16, 16);
    m(la * 4 + lb, la * 4 + lb) = 1;
    return {m, {"A.det", "B.det"}};
}

}  // namespace hepp
