#include "hepp/verification.hpp"

#include "hepp/analytic.hpp"
#include "hepp/efficiency.hpp"
#include "hepp/parallel.hpp"
#include "hepp/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace hepp::verification {
namespace {

void track(PointReport& rep, double dev, const std::string& what) {
    if (dev > rep.worst_deviation) {
        rep.worst_deviation = dev;
        rep.worst_what = what;
    }
}

void compare_coeffs(PointReport& rep, const BellCoeffs& engine, const BellCoeffs& closed,
                    const std::string& what) {
    for (int i = 0; i < 4; ++i) track(rep, std::abs(engine[i] - closed[i]), what);
}

}  // namespace

std::vector<double> linspace(double from, double to, int steps) {
    std::vector<double> v;
    if (steps < 2) {
        v.push_back(from);
        return v;
    }
    for (int i = 0; i < steps; ++i) v.push_back(from + (to - from) * i / (steps - 1));
    return v;
}

PointReport compare_point(const NoiseParams& np, NoiseVariant model) {
    PointReport rep;

    const auto [s1_ok, s1_fail] = step1_only(np, model);
    const auto reports = run(np, model);

    double total = 0;
    for (const auto& r : reports) {
        total += r.probability;
        rep.offdiag_residual = std::max(rep.offdiag_residual, r.bell_offdiag_residual);
    }
    rep.completeness_defect = std::abs(total - 1.0);
    rep.offdiag_residual = std::max({rep.offdiag_residual, s1_ok.bell_offdiag_residual,
                                     s1_fail.bell_offdiag_residual});

    const auto& both = reports[0];        // BothSuccess
    const auto& f1s2 = reports[1];        // Fail1Success2
    const auto& s1f2 = reports[2];        // Success1Fail2
    const auto& bf = reports[3];          // BothFail

    if (model == NoiseVariant::BitFlipOnly) {
        const auto a1 = analytic::step1_simple(np.pp, np.ps);
        const auto a1f = analytic::step1_fail_simple(np.pp, np.ps);
        const auto a2 = analytic::step2_simple(np.pp, np.ps, np.pt);
        const auto fb = analytic::fail_branches(np.pp, np.ps, np.pt);

        track(rep, std::abs(s1_ok.probability - a1.probability), "P1");
        compare_coeffs(rep, s1_ok.pol_coeffs, a1.coeffs, "rho_1p");
        track(rep, std::abs(s1_fail.probability - a1f.probability), "P_fail1");
        compare_coeffs(rep, s1_fail.pol_coeffs, a1f.coeffs, "rho_fail1");

        track(rep, std::abs(both.probability - a1.probability * a2.probability), "P1*P2");
        compare_coeffs(rep, both.pol_coeffs, a2.coeffs, "rho_3p");
        track(rep, std::abs(s1f2.probability - fb.success1_fail2.joint_probability),
              "P1*P_fail2");
        compare_coeffs(rep, s1f2.pol_coeffs, fb.success1_fail2.coeffs, "rho_fail2");
        track(rep, std::abs(f1s2.probability - fb.fail1_success2.joint_probability),
              "P_fail1*P'_fail1");
        compare_coeffs(rep, f1s2.pol_coeffs, fb.fail1_success2.coeffs, "rho'_fail1");
        track(rep, std::abs(bf.probability - fb.both_fail.joint_probability), "P_fail1*P_fail3");
        compare_coeffs(rep, bf.pol_coeffs, fb.both_fail.coeffs, "rho_fail3");
    } else {
        const auto a1 = analytic::step1_general(np.pp, np.ps);
        const auto a2 = analytic::step2_general(np.pp, np.ps, np.pt);
        track(rep, std::abs(s1_ok.probability - a1.probability), "P1n");
        compare_coeffs(rep, s1_ok.pol_coeffs, a1.coeffs, "rho_1pn");
        track(rep, std::abs(both.probability - a1.probability * a2.probability), "P1n*P2n");
        compare_coeffs(rep, both.pol_coeffs, a2.coeffs, "rho_3pn");
    }
    return rep;
}

GridReport compare_grid(const std::vector<double>& axis, bool parallel) {
    if (axis.empty()) throw std::invalid_argument("empty verification axis");
    const int n = static_cast<int>(axis.size());
    const int total = n * n * n * 2;
    std::vector<PointReport> reports(total);
    std::vector<NoiseParams> points(total);
    std::vector<NoiseVariant> models(total);

    parallel_for(
        total,
        [&](int idx) {
            const int m = idx % 2;
            const int rest = idx / 2;
            const NoiseParams np{axis[rest / (n * n)], axis[(rest / n) % n], axis[rest % n]};
            const NoiseVariant model =
                m == 0 ? NoiseVariant::BitFlipOnly : NoiseVariant::FullWerner;
            points[idx] = np;
            models[idx] = model;
            reports[idx] = compare_point(np, model);
        },
        parallel);

    GridReport out;
    out.points_checked = total;
    for (int i = 0; i < total; ++i) {
        if (reports[i].worst_deviation > out.worst_deviation) {
            out.worst_deviation = reports[i].worst_deviation;
            out.worst_point = points[i];
            out.worst_model = models[i];
            out.worst_what = reports[i].worst_what;
        }
        out.worst_completeness = std::max(out.worst_completeness, reports[i].completeness_defect);
        out.worst_offdiag = std::max(out.worst_offdiag, reports[i].offdiag_residual);
    }
    return out;
}

namespace {

// Pure product input |bell_pol> |a3 b3> |bell_time> in the engine layout.
MixedState branch_input(BellKind pol, BellKind time, int spa_a, int spa_b) {
    Vector spa = Vector::Zero(4);
    spa(spa_a * 2 + spa_b) = 1;
    const PureState spa_state(spa, {{"A.spa", 2}, {"B.spa", 2}});
    return MixedState::from_pure(tensor(tensor(bell_state(Dof::Pol, pol), spa_state),
                                        bell_state(Dof::TimeBin, time)));
}

MixedState through_step2(const MixedState& in) {
    const auto ua = step2_unit(Party::Alice);
    MixedState s = apply_isometry(in, ua.matrix, ua.targets, ua.outputs);
    const auto ub = step2_unit(Party::Bob);
    return apply_isometry(s, ub.matrix, ub.targets, ub.outputs);
}

// Expected output in the final layout (A.pol, A.det, B.pol, B.det):
// bell_pol tensor (|d_a d_b> + sign |d_a' d_b'>)/sqrt(2); detector arguments
// are global indices (1..4 Alice, 5..8 Bob).
Matrix expected_output(BellKind pol, int da1, int db1, double sign, int da2, int db2) {
    const Vector p = bell_ket(pol);
    Vector v = Vector::Zero(64);
    constexpr double inv = 0.70710678118654752440;
    auto put = [&](int da, int db, double w) {
        const int la = da - 1, lb = db - 5;
        for (int ap = 0; ap < 2; ++ap)
            for (int bp = 0; bp < 2; ++bp)
                v(ap * 32 + la * 8 + bp * 4 + lb) += w * inv * p(ap * 2 + bp);
    };
    put(da1, db1, 1.0);
    put(da2, db2, sign);
    return v * v.adjoint();
}

}  // namespace

LinearityReport step2_linearity_check() {
    LinearityReport rep;

    struct Case {
        BellKind pol_in, time_in, pol_out;
        int da1, db1;
        double sign;
        int da2, db2;
    };
    // Branch a3b3: success detector pairs D2D6/D1D5, failure pairs D2D5/D1D6.
    const Case cases[] = {
        {BellKind::PhiPlus, BellKind::PhiPlus, BellKind::PhiPlus, 2, 6, +1, 1, 5},
        {BellKind::PhiMinus, BellKind::PhiPlus, BellKind::PhiMinus, 2, 6, -1, 1, 5},
        {BellKind::PsiPlus, BellKind::PsiPlus, BellKind::PsiPlus, 2, 6, +1, 1, 5},
        {BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PsiMinus, 2, 6, -1, 1, 5},
        {BellKind::PhiPlus, BellKind::PsiPlus, BellKind::PsiPlus, 2, 5, +1, 1, 6},
        {BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus, 2, 5, -1, 1, 6},
        {BellKind::PsiPlus, BellKind::PhiPlus, BellKind::PhiPlus, 2, 5, +1, 1, 6},
        {BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus, 2, 5, -1, 1, 6},
    };
    for (const auto& c : cases) {
        const MixedState out = through_step2(branch_input(c.pol_in, c.time_in, 0, 0));
        const Matrix expected = expected_output(c.pol_out, c.da1, c.db1, c.sign, c.da2, c.db2);
        rep.max_coeff_error =
            std::max(rep.max_coeff_error, (out.matrix() - expected).cwiseAbs().maxCoeff());
    }

    // The four quoted class lists partition the 16 patterns, four each.
    const std::array<std::array<std::array<int, 2>, 4>, 4> quoted = {{
        {{{2, 6}, {1, 5}, {3, 7}, {4, 8}}},
        {{{1, 6}, {2, 5}, {3, 8}, {4, 7}}},
        {{{2, 7}, {1, 8}, {3, 6}, {4, 5}}},
        {{{2, 8}, {1, 7}, {3, 5}, {4, 6}}},
    }};
    const OutcomeClass expected_cls[4] = {OutcomeClass::BothSuccess, OutcomeClass::Success1Fail2,
                                          OutcomeClass::Fail1Success2, OutcomeClass::BothFail};
    rep.partition_ok = true;
    int seen = 0;
    for (int c = 0; c < 4; ++c)
        for (const auto& e : quoted[c]) {
            ++seen;
            if (classify({e[0], e[1]}) != expected_cls[c]) rep.partition_ok = false;
        }
    if (seen != 16) rep.partition_ok = false;

    // a4b4-branch success mass sits only on (3,7) and (4,8).
    const MixedState out44 = through_step2(branch_input(BellKind::PhiPlus, BellKind::PhiPlus, 1, 1));
    rep.a4b4_detectors_ok = true;
    for (const auto& pat : all_patterns()) {
        const auto res = project(out44, detector_projector(pat));
        const bool expected_hit = (pat.alice == 3 && pat.bob == 7) || (pat.alice == 4 && pat.bob == 8);
        if (expected_hit != (res.probability > 1e-12)) rep.a4b4_detectors_ok = false;
    }
    return rep;
}

P2tDiagnostic p2t_diagnostic(double pp) {
    P2tDiagnostic d;
    d.closed_form = efficiency::p2t(pp);
    d.enumerated = efficiency::p2t_enumeration(pp);
    d.ratio = d.closed_form / d.enumerated;
    return d;
}

}  // namespace hepp::verification
