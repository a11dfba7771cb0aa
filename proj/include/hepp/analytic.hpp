#pragma once

#include "hepp/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hepp::analytic {

struct StepResult {
    double probability = 0;  // success probability of the step (conditional)
    BellCoeffs coeffs;
    bool degenerate = false;  // probability vanished, coefficients undefined
};

/// Simple model (bit-flip-only spatial/time noise), step 1 success branch:
/// P1 = (4 pp ps - ps - 2 pp + 2)/3, coeffs (F1, F2, F3, F3).
StepResult step1_simple(double pp, double ps);

/// Simple model, step 1 failure branch (spatial modes a3b4/a4b3):
/// P_fail1 and the rho_fail1 coefficients.
StepResult step1_fail_simple(double pp, double ps);

/// Simple model step 2 success branch: P2 and (F'1, F'2, F'3, F'4).
StepResult step2_simple(double pp, double ps, double pt);

/// General (full-Werner) model step 1: P1n and (F1n, F2n, F3n, F3n).
StepResult step1_general(double pp, double ps);

/// General model step 2: P2n and (F'1n, F'2n, F'3n, F'3n).
StepResult step2_general(double pp, double ps, double pt);

struct FailResult {
    double step_probability = 0;   // conditional on the preceding branch
    double joint_probability = 0;  // times the preceding branch probability
    BellCoeffs coeffs;
    bool degenerate = false;
};

/// Simple-model failure branches of the full pipeline:
/// fail1_success2 = rho'_fail1, success1_fail2 = rho_fail2, both_fail = rho_fail3.
struct FailBranches {
    FailResult fail1_success2;
    FailResult success1_fail2;
    FailResult both_fail;
};
FailBranches fail_branches(double pp, double ps, double pt);

/// The p_s bound below which the step-1 failure state keeps residual
/// entanglement (F_fail1 > 1/2): (4 pp - 1)/(1 + 2 pp).
double fail1_residual_ps_bound(double pp);

struct CriterionBand {
    double lower = 0;
    double upper = 0;
    bool empty = true;
    std::string parameter;
};

struct CriteriaReport {
    // simple model, step 1
    bool simple_f1_gt_pp = false;
    bool simple_f1_gt_ps = false;
    // general model, closed-form inequalities
    bool general_f1n_gt_pp = false;   // p_s > (6pp - 2pp^2 - 1)/(12pp - 8pp^2 - 1)
    bool general_f1n_gt_ps = false;   // (8pp-2)ps^2 + 6(1-2pp)ps + pp - 1 < 0
    bool general_f1np_gt_f1n = false;
    bool general_f1np_gt_pt = false;  // pt^2(4pp-1)(4ps-1) + 3pt(1-4pp ps) < (1-pp)(1-ps)
    // bisection-derived bands on the exact rational functions
    CriterionBand ps_band;  // at given pp: simultaneous F1n > pp and F1n > ps
    CriterionBand pt_band;  // at given (pp, ps): F'1n > F1n (lower), F'1n > pt (upper)
};
CriteriaReport criteria(double pp, double ps, double pt);

/// Root of f on [lo, hi] by scanning at `scan_step` for a sign change, then
/// bisection to `tol` absolute. Empty if no sign change is found.
std::optional<double> find_root(const std::function<double(double)>& f, double lo, double hi,
                                double scan_step = 1e-3, double tol = 1e-6);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Canonical parameter grids for figures 2, 3, 4, 5, 7, 8, 9.
Table figure_data(int figure);

}  // namespace hepp::analytic
