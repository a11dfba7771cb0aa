#include "hepp/efficiency.hpp"

#include "hepp/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace hepp::efficiency {
namespace {

// Bell label as (bit, phase): Phi+=(0,0), Phi-=(0,1), Psi+=(1,0), Psi-=(1,1).
int bit_of(int k) { return k >= 2 ? 1 : 0; }
int phase_of(int k) { return k % 2; }

}  // namespace

double eta_t(double d_km, double d0) {
    if (d_km < 0 || d0 <= 0) throw std::invalid_argument("bad distance parameters");
    return std::exp(-d_km / d0);
}

double p1t(double pp) {
    const double q = 1 - pp;
    return 0.5 * (pp * pp + 2 * pp * q / 3 + 5 * q * q / 9);
}

double p2t(double pp) {
    const double q2 = (1 - pp) * (1 - pp);
    const double a = pp * pp + q2 / 9;
    const double bracket = a * a + 8.0 / 81 * q2 * q2 + 4.0 / 9 * a * q2 + 4.0 / 9 * pp * pp * q2 +
                           8.0 / 27 * pp * (1 - pp) * q2;
    const double f = p1t(pp);
    return bracket / (8 * f * f);
}

double conventional_efficiency(double pp, const EfficiencyParams& ep) {
    const double eta = eta_t(ep.d_km, ep.d0) * ep.eta_d * ep.eta_c;
    const double f = p1t(pp);
    return 0.25 * f * f * p2t(pp) * std::pow(eta, 8);
}

double new_efficiency(const NoiseParams& np, const EfficiencyParams& ep) {
    const double eta = eta_t(ep.d_km, ep.d0) * ep.eta_d * ep.eta_c;
    const double p1n = analytic::step1_general(np.pp, np.ps).probability;
    const double p2n = analytic::step2_general(np.pp, np.ps, np.pt).probability;
    return p1n * p2n * eta * eta;
}

RatioCurve ratio_curve(const NoiseParams& np, const EfficiencyParams& ep,
                       const std::vector<double>& d_grid) {
    if (d_grid.empty()) throw std::invalid_argument("empty distance grid");
    RatioCurve out;
    out.points.reserve(d_grid.size());
    for (double d : d_grid) {
        EfficiencyParams p = ep;
        p.d_km = d;
        RatioPoint pt;
        pt.d_km = d;
        pt.e_o = conventional_efficiency(np.pp, p);
        pt.e_n = new_efficiency(np, p);
        pt.ratio = pt.e_n / pt.e_o;
        pt.log10_ratio = std::log10(pt.ratio);
        out.points.push_back(pt);
    }
    // Least-squares fit of log10 R vs d.
    const double n = static_cast<double>(out.points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : out.points) {
        sx += p.d_km;
        sy += p.log10_ratio;
        sxx += p.d_km * p.d_km;
        sxy += p.d_km * p.log10_ratio;
    }
    const double denom = n * sxx - sx * sx;
    if (denom != 0) {
        out.slope = (n * sxy - sx * sy) / denom;
        out.intercept = (sy - out.slope * sx) / n;
    } else {
        out.slope = 0;
        out.intercept = sy / n;
    }
    for (const auto& p : out.points)
        out.max_residual =
            std::max(out.max_residual, std::abs(p.log10_ratio - (out.slope * p.d_km + out.intercept)));
    return out;
}

double parity_agreement_probability(const BellCoeffs& a, const BellCoeffs& b) {
    double acc = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (bit_of(i) == bit_of(j)) acc += a[i] * b[j];
    return acc;
}

BellCoeffs parity_check_output(const BellCoeffs& a, const BellCoeffs& b) {
    // Success keeps the control pair; phases multiply, bit label survives.
    double w[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (bit_of(i) != bit_of(j)) continue;
            const int k = bit_of(i) * 2 + (phase_of(i) ^ phase_of(j));
            w[k] += a[i] * b[j];
        }
    const double s = w[0] + w[1] + w[2] + w[3];
    if (s <= 0) return {};
    return {w[0] / s, w[1] / s, w[2] / s, w[3] / s};
}

double p2t_enumeration(double pp) {
    const double q = (1 - pp) / 3;
    const BellCoeffs werner{pp, q, q, q};
    BellCoeffs round1 = parity_check_output(werner, werner);
    // Hadamard relabeling before the phase-error round: Phi- <-> Psi+.
    std::swap(round1.phi_minus, round1.psi_plus);
    return parity_agreement_probability(round1, round1);
}

}  // namespace hepp::efficiency
