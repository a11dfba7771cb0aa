#include "hepp/protocol.hpp"

#include <stdexcept>

namespace hepp {
namespace {

const std::array<OutcomeClass, 4> kClasses = {OutcomeClass::BothSuccess,
                                              OutcomeClass::Fail1Success2,
                                              OutcomeClass::Success1Fail2, OutcomeClass::BothFail};

bool step2_failed(OutcomeClass c) {
    return c == OutcomeClass::Success1Fail2 || c == OutcomeClass::BothFail;
}

// Heralded correction: a step-2 failure pattern reveals that the surviving
// polarization pair carries an extra bit flip (Phi <-> Psi); the parties undo
// it with a local sigma_x, which is what the reported failure states assume.
MixedState corrected(const MixedState& pol, OutcomeClass c) {
    if (!step2_failed(c)) return pol;
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return apply(pol, SubsystemOp{x, {"B.pol"}});
}

OutcomeReport make_report(OutcomeClass c, double prob, const MixedState& cond, bool zero) {
    OutcomeReport r;
    r.cls = c;
    r.probability = prob;
    r.zero = zero;
    if (!zero) {
        const auto dec = extract_bell_coeffs(cond);
        r.pol_coeffs = dec.coeffs;
        r.fidelity = dec.coeffs.phi_plus;
        r.bell_offdiag_residual = dec.max_offdiag;
    }
    return r;
}

}  // namespace

std::array<std::pair<OutcomeReport, MixedState>, 4> run_with_pol_states(
    const MixedState& pol, double ps, double pt, NoiseVariant model) {
    MixedState state = hyper_input_with_pol(pol, ps, pt, model);
    state = apply(state, pbs_parity(Party::Alice));
    state = apply(state, pbs_parity(Party::Bob));
    state = apply(state, qwp_hadamard(Party::Alice));
    state = apply(state, qwp_hadamard(Party::Bob));
    const auto ua = step2_unit(Party::Alice);
    state = apply_isometry(state, ua.matrix, ua.targets, ua.outputs);
    const auto ub = step2_unit(Party::Bob);
    state = apply_isometry(state, ub.matrix, ub.targets, ub.outputs);

    const MixedState empty_pol(Matrix::Zero(4, 4), {{"A.pol", 2}, {"B.pol", 2}});
    std::array<std::pair<OutcomeReport, MixedState>, 4> out{
        std::pair{OutcomeReport{}, empty_pol}, std::pair{OutcomeReport{}, empty_pol},
        std::pair{OutcomeReport{}, empty_pol}, std::pair{OutcomeReport{}, empty_pol}};

    for (int c = 0; c < 4; ++c) {
        Matrix acc = Matrix::Zero(state.dim(), state.dim());
        for (const auto& pat : patterns_of(kClasses[c])) {
            const Matrix p = embed(state.dims(), detector_projector(pat));
            acc += p * state.matrix() * p.adjoint();
        }
        acc = Complex(0.5) * (acc + Matrix(acc.adjoint()));
        const double prob = acc.trace().real();
        if (prob < kProbabilityFloor) {
            out[c] = {make_report(kClasses[c], 0.0, empty_pol, true), empty_pol};
            continue;
        }
        MixedState cond = partial_trace(MixedState(acc / prob, state.dims()), {"A.pol", "B.pol"});
        cond = corrected(cond, kClasses[c]);
        out[c] = {make_report(kClasses[c], prob, cond, false), cond};
    }
    return out;
}

std::array<OutcomeReport, 4> run_with_pol(const MixedState& pol, double ps, double pt,
                                          NoiseVariant model) {
    const auto full = run_with_pol_states(pol, ps, pt, model);
    std::array<OutcomeReport, 4> out;
    for (int c = 0; c < 4; ++c) out[c] = full[c].first;
    return out;
}

std::array<OutcomeReport, 4> run(const NoiseParams& np, NoiseVariant model) {
    return run_with_pol(werner_pol(np.pp), np.ps, np.pt, model);
}

std::pair<Step1Report, Step1Report> step1_only(const NoiseParams& np, NoiseVariant model) {
    MixedState state = tensor(werner_pol(np.pp), dof_mixture(Dof::Spatial, np.ps, model));
    state = apply(state, pbs_parity(Party::Alice));
    state = apply(state, pbs_parity(Party::Bob));

    auto branch = [&](const SubsystemOp& proj) {
        const auto res = project(state, proj);
        Step1Report r;
        r.probability = res.probability;
        r.zero = res.zero;
        if (!res.zero) {
            const auto dec = extract_bell_coeffs(partial_trace(res.conditional, {"A.pol", "B.pol"}));
            r.pol_coeffs = dec.coeffs;
            r.bell_offdiag_residual = dec.max_offdiag;
        }
        return r;
    };
    return {branch(step1_success_projector()), branch(step1_failure_projector())};
}

std::vector<std::array<OutcomeReport, 4>> iterate(const NoiseParams& np, NoiseVariant model,
                                                  const RoundPlan& plan) {
    if (plan.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    std::vector<std::array<OutcomeReport, 4>> rounds;
    MixedState pol = werner_pol(np.pp);
    for (int k = 0; k < plan.rounds; ++k) {
        const auto full = run_with_pol_states(pol, np.ps, np.pt, model);
        std::array<OutcomeReport, 4> reports;
        for (int c = 0; c < 4; ++c) reports[c] = full[c].first;
        rounds.push_back(reports);

        int pick = 0;
        if (plan.reuse_policy == ReusePolicy::KeepBothSuccessOnly) {
            pick = 0;  // BothSuccess
        } else {
            double best = -1;
            pick = -1;
            for (int c = 0; c < 4; ++c)
                if (!full[c].first.zero && full[c].first.fidelity > best) {
                    best = full[c].first.fidelity;
                    pick = c;
                }
        }
        if (pick < 0 || full[pick].first.zero) break;  // trajectory terminated
        pol = full[pick].second;
    }
    return rounds;
}

}  // namespace hepp
