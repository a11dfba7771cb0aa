#include "hepp/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace hepp::analytic {
namespace {

constexpr double kDegenerate = 1e-14;

StepResult make(double prob, double c0, double c1, double c2, double c3) {
    StepResult r;
    r.probability = prob;
    if (prob < kDegenerate) {
        r.degenerate = true;
        return r;
    }
    r.coeffs = {c0 / prob, c1 / prob, c2 / prob, c3 / prob};
    return r;
}

std::vector<double> grid(double from, double to, double step) {
    std::vector<double> g;
    const int n = static_cast<int>(std::round((to - from) / step));
    for (int i = 0; i <= n; ++i) g.push_back(from + i * step);
    return g;
}

}  // namespace

StepResult step1_simple(double pp, double ps) {
    const double p1 = (4 * pp * ps - ps - 2 * pp + 2) / 3;
    const double f1 = pp * ps;
    const double f2 = (1 - pp) * ps / 3;
    const double f3 = (1 - pp) * (1 - ps) / 3;
    return make(p1, f1, f2, f3, f3);
}

StepResult step1_fail_simple(double pp, double ps) {
    const double pf = (1 + ps + 2 * pp - 4 * pp * ps) / 3;
    const double f = pp * (1 - ps);
    const double a = (1 - pp) * (1 - ps) / 3;
    const double b = (1 - pp) * ps / 3;
    return make(pf, f, a, b, b);
}

StepResult step2_simple(double pp, double ps, double pt) {
    const auto s1 = step1_simple(pp, ps);
    if (s1.degenerate) return s1;
    const double f1 = s1.coeffs.phi_plus, f2 = s1.coeffs.phi_minus, f3 = s1.coeffs.psi_plus;
    const double p2 = (f1 + f3) * pt + (f2 + f3) * (1 - pt);
    // rho_3p: Phi+ = F1 pt, Phi- = F3 pt, Psi+ = F2 (1-pt), Psi- = F3 (1-pt)
    return make(p2, f1 * pt, f3 * pt, f2 * (1 - pt), f3 * (1 - pt));
}

StepResult step1_general(double pp, double ps) {
    const double p1n = (8 * pp * ps - 2 * pp - 2 * ps + 5) / 9;
    const double f1 = pp * ps + (1 - pp) * (1 - ps) / 9;
    const double f2 = (pp * (1 - ps) + (1 - pp) * ps) / 3;
    // F3n is the weight of each of Psi+ and Psi- (F1n + F2n + 2 F3n = 1).
    const double f3 = 2 * (1 - pp) * (1 - ps) / 9;
    return make(p1n, f1, f2, f3, f3);
}

StepResult step2_general(double pp, double ps, double pt) {
    const auto s1 = step1_general(pp, ps);
    if (s1.degenerate) return s1;
    const double f1 = s1.coeffs.phi_plus, f2 = s1.coeffs.phi_minus, f3 = s1.coeffs.psi_plus;
    const double p2n = (f1 + f3) * (pt + (1 - pt) / 3) + (f2 + f3) * 2 * (1 - pt) / 3;
    const double fp1 = f1 * pt + f3 * (1 - pt) / 3;
    const double fp2 = f1 * (1 - pt) / 3 + f3 * pt;
    const double fp3 = (f2 + f3) * (1 - pt) / 3;
    return make(p2n, fp1, fp2, fp3, fp3);
}

FailBranches fail_branches(double pp, double ps, double pt) {
    FailBranches out;
    const auto s1 = step1_simple(pp, ps);
    const auto f1b = step1_fail_simple(pp, ps);

    // rho'_fail1: step 1 failed, step 2 succeeded.
    if (!f1b.degenerate) {
        const double f = f1b.coeffs.phi_plus, a = f1b.coeffs.phi_minus, b = f1b.coeffs.psi_plus;
        const double pf = (f + b) * pt + (a + b) * (1 - pt);
        auto r = make(pf, f * pt, b * pt, a * (1 - pt), b * (1 - pt));
        out.fail1_success2 = {r.probability, f1b.probability * r.probability, r.coeffs,
                              r.degenerate};
    } else {
        out.fail1_success2.degenerate = true;
    }

    // rho_fail2: step 1 succeeded, step 2 failed.
    if (!s1.degenerate) {
        const double f1 = s1.coeffs.phi_plus, f2 = s1.coeffs.phi_minus, f3 = s1.coeffs.psi_plus;
        const double pf = (f1 + f3) * (1 - pt) + (f2 + f3) * pt;
        auto r = make(pf, f1 * (1 - pt), f3 * (1 - pt), f2 * pt, f3 * pt);
        out.success1_fail2 = {r.probability, s1.probability * r.probability, r.coeffs,
                              r.degenerate};
    } else {
        out.success1_fail2.degenerate = true;
    }

    // rho_fail3: both steps failed.
    if (!f1b.degenerate) {
        const double f = f1b.coeffs.phi_plus, a = f1b.coeffs.phi_minus, b = f1b.coeffs.psi_plus;
        const double pf = (f + b) * (1 - pt) + (a + b) * pt;
        auto r = make(pf, f * (1 - pt), b * (1 - pt), a * pt, b * pt);
        out.both_fail = {r.probability, f1b.probability * r.probability, r.coeffs, r.degenerate};
    } else {
        out.both_fail.degenerate = true;
    }
    return out;
}

double fail1_residual_ps_bound(double pp) { return (4 * pp - 1) / (1 + 2 * pp); }

std::optional<double> find_root(const std::function<double(double)>& f, double lo, double hi,
                                double scan_step, double tol) {
    double a = lo, fa = f(a);
    if (fa == 0) return a;
    for (double b = lo + scan_step; b <= hi + scan_step / 2; b += scan_step) {
        const double x = std::min(b, hi);
        const double fx = f(x);
        if (fx == 0) return x;
        if ((fa < 0) != (fx < 0)) {
            double l = a, r = x, fl = fa;
            while (r - l > tol) {
                const double m = 0.5 * (l + r);
                const double fm = f(m);
                if (fm == 0) return m;
                if ((fl < 0) != (fm < 0)) {
                    r = m;
                } else {
                    l = m;
                    fl = fm;
                }
            }
            return 0.5 * (l + r);
        }
        a = x;
        fa = fx;
        if (x >= hi) break;
    }
    return std::nullopt;
}

CriteriaReport criteria(double pp, double ps, double pt) {
    CriteriaReport rep;

    const auto s1 = step1_simple(pp, ps);
    if (!s1.degenerate) {
        rep.simple_f1_gt_pp = s1.coeffs.phi_plus > pp;
        rep.simple_f1_gt_ps = s1.coeffs.phi_plus > ps;
    }

    rep.general_f1n_gt_pp = ps > (6 * pp - 2 * pp * pp - 1) / (12 * pp - 8 * pp * pp - 1);
    rep.general_f1n_gt_ps = (8 * pp - 2) * ps * ps + 6 * (1 - 2 * pp) * ps + pp - 1 < 0;

    const auto g1 = step1_general(pp, ps);
    if (!g1.degenerate && pt < 1) {
        const double f1n = g1.coeffs.phi_plus;
        const double f3n = g1.coeffs.psi_plus;
        const double lhs = 3 * (pt - 0.5) / (1 - pt);
        const double rhs = (f1n - 0.5) * (f1n + f3n) / (f1n * (1 - (f1n + f3n)));
        rep.general_f1np_gt_f1n = lhs > rhs;
    }
    rep.general_f1np_gt_pt = pt * pt * (4 * pp - 1) * (4 * ps - 1) + 3 * pt * (1 - 4 * pp * ps) <
                             (1 - pp) * (1 - ps);

    // Bands by bisection on the exact rational functions.
    const double lo = 1e-3, hi = 1 - 1e-3;
    auto f1n_at = [&](double x) { return step1_general(pp, x).coeffs.phi_plus; };
    const auto ps_lo = find_root([&](double x) { return f1n_at(x) - pp; }, lo, hi);
    const auto ps_hi = find_root([&](double x) { return f1n_at(x) - x; }, lo, hi);
    rep.ps_band.parameter = "ps";
    if (ps_lo && ps_hi && *ps_lo < *ps_hi) {
        rep.ps_band = {*ps_lo, *ps_hi, false, "ps"};
    }

    auto f1np_at = [&](double x) { return step2_general(pp, ps, x).coeffs.phi_plus; };
    const double f1n_here = g1.degenerate ? 0.0 : g1.coeffs.phi_plus;
    const auto pt_lo = find_root([&](double x) { return f1np_at(x) - f1n_here; }, lo, hi);
    const auto pt_hi = find_root([&](double x) { return f1np_at(x) - x; }, lo, hi);
    rep.pt_band.parameter = "pt";
    if (pt_lo && pt_hi && *pt_lo < *pt_hi) {
        rep.pt_band = {*pt_lo, *pt_hi, false, "pt"};
    }
    return rep;
}

Table figure_data(int figure) {
    Table t;
    switch (figure) {
        case 2: {
            t.columns = {"ps", "F1n", "F2n", "F3n"};
            for (double ps : grid(0.505, 1.0, 0.005)) {
                const auto r = step1_general(0.6, ps);
                t.rows.push_back({ps, r.coeffs.phi_plus, r.coeffs.phi_minus, r.coeffs.psi_plus});
            }
            break;
        }
        case 3: {
            t.columns = {"pp", "ps_min", "ps_max"};
            for (double pp : grid(0.505, 0.95, 0.005)) {
                const auto rep = criteria(pp, 0.75, 0.75);
                t.rows.push_back({pp, rep.ps_band.empty ? std::nan("") : rep.ps_band.lower,
                                  rep.ps_band.empty ? std::nan("") : rep.ps_band.upper});
            }
            break;
        }
        case 4: {
            t.columns = {"pt", "F1np", "F2np", "F3np"};
            for (double pt : grid(0.505, 1.0, 0.005)) {
                const auto r = step2_general(0.6, 0.8, pt);
                t.rows.push_back({pt, r.coeffs.phi_plus, r.coeffs.phi_minus, r.coeffs.psi_plus});
            }
            break;
        }
        case 5: {
            t.columns = {"ps", "pt_min", "pt_max"};
            for (double ps : grid(0.61, 0.71, 0.005)) {
                const auto rep = criteria(0.65, ps, 0.75);
                t.rows.push_back({ps, rep.pt_band.empty ? std::nan("") : rep.pt_band.lower,
                                  rep.pt_band.empty ? std::nan("") : rep.pt_band.upper});
            }
            break;
        }
        case 7: {
            t.columns = {"pt", "Fp_fail1_ps0.52", "Fp_fail1_ps0.62", "Fp_fail1_ps0.68"};
            for (double pt : grid(0.51, 1.0, 0.005)) {
                std::vector<double> row = {pt};
                for (double ps : {0.52, 0.62, 0.68})
                    row.push_back(fail_branches(0.65, ps, pt).fail1_success2.coeffs.phi_plus);
                t.rows.push_back(row);
            }
            break;
        }
        case 8: {
            t.columns = {"pt", "F_fail2_ps0.52", "F_fail2_ps0.62", "F_fail2_ps0.7",
                         "F_fail2_ps0.8"};
            for (double pt : grid(0.51, 1.0, 0.005)) {
                std::vector<double> row = {pt};
                for (double ps : {0.52, 0.62, 0.7, 0.8})
                    row.push_back(fail_branches(0.65, ps, pt).success1_fail2.coeffs.phi_plus);
                t.rows.push_back(row);
            }
            break;
        }
        case 9: {
            t.columns = {"pt", "F_fail3_ps0.52", "F_fail3_ps0.62", "F_fail3_ps0.68"};
            for (double pt : grid(0.51, 1.0, 0.005)) {
                std::vector<double> row = {pt};
                for (double ps : {0.52, 0.62, 0.68})
                    row.push_back(fail_branches(0.65, ps, pt).both_fail.coeffs.phi_plus);
                t.rows.push_back(row);
            }
            break;
        }
        default:
            throw std::invalid_argument("unknown figure id (expected 2,3,4,5,7,8,9)");
    }
    return t;
}

}  // namespace hepp::analytic
