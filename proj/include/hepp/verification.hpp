#pragma once

#include "hepp/model.hpp"

#include <string>
#include <vector>

namespace hepp::verification {

/// Worst engine-vs-closed-form deviation at one parameter point, over every
/// probability and Bell coefficient the closed forms cover for that model,
/// plus the class-probability completeness defect.
struct PointReport {
    double worst_deviation = 0;
    double completeness_defect = 0;
    double offdiag_residual = 0;
    std::string worst_what;
};
PointReport compare_point(const NoiseParams& np, NoiseVariant model);

struct GridReport {
    double worst_deviation = 0;
    double worst_completeness = 0;
    double worst_offdiag = 0;
    NoiseParams worst_point;
    NoiseVariant worst_model = NoiseVariant::BitFlipOnly;
    std::string worst_what;
    int points_checked = 0;
};

/// Oracle-equivalence sweep over axis^3 x both noise models.
GridReport compare_grid(const std::vector<double>& axis, bool parallel = true);

/// Expansion of the step-2 unit on the eight written-out Bell x Bell product
/// inputs, coefficient-by-coefficient, plus the detector-pattern partition
/// and the a4b4-branch detector check.
struct LinearityReport {
    double max_coeff_error = 0;
    bool partition_ok = false;
    bool a4b4_detectors_ok = false;
};
LinearityReport step2_linearity_check();

/// Non-gating comparison of the closed-form four-pair round-2 probability with a
/// bilateral-parity-check enumeration.
struct P2tDiagnostic {
    double closed_form = 0;
    double enumerated = 0;
    double ratio = 0;
};
P2tDiagnostic p2t_diagnostic(double pp);

std::vector<double> linspace(double from, double to, int steps);

}  // namespace hepp::verification
