#pragma once

#include "hepp/model.hpp"

#include <vector>

namespace hepp::efficiency {

struct EfficiencyParams {
    double d_km = 0;
    double d0 = 25;      // fibre attenuation length, km
    double eta_d = 0.9;  // detector efficiency
    double eta_c = 0.95; // coupling efficiency
};

/// Photon transmission efficiency exp(-d/d0).
double eta_t(double d_km, double d0);

/// Success probability brackets of the conventional four-pair recurrence EPP.
double p1t(double pp);
double p2t(double pp);

/// E_o = 1/4 P1t^2 P2t (eta_t eta_d eta_c)^8.
double conventional_efficiency(double pp, const EfficiencyParams& ep);

/// E_n = P1n P2n (eta_t eta_d eta_c)^2.
double new_efficiency(const NoiseParams& np, const EfficiencyParams& ep);

struct RatioPoint {
    double d_km = 0;
    double e_o = 0;
    double e_n = 0;
    double ratio = 0;
    double log10_ratio = 0;
};

struct RatioCurve {
    std::vector<RatioPoint> points;
    double slope = 0;         // least-squares slope of log10 R vs d
    double intercept = 0;
    double max_residual = 0;  // worst deviation from the fitted line
};

RatioCurve ratio_curve(const NoiseParams& np, const EfficiencyParams& ep,
                       const std::vector<double>& d_grid);

/// Probability that two Bell-diagonal pairs agree in Phi/Psi parity,
/// enumerated over the 16 Bell-label combinations.
double parity_agreement_probability(const BellCoeffs& a, const BellCoeffs& b);

/// Kept-pair coefficients of a bilateral parity check conditioned on success.
BellCoeffs parity_check_output(const BellCoeffs& a, const BellCoeffs& b);

/// Round-2 success probability of a bilateral-parity-check model of the
/// four-pair protocol. Diagnostic only: the closed-form p2t() is this value times
/// a constant linear-optics post-selection factor (reported by verify).
double p2t_enumeration(double pp);

}  // namespace hepp::efficiency
