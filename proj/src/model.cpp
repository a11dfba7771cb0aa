#include "hepp/model.hpp"

#include <cmath>
#include <stdexcept>

namespace hepp {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_unit_interval(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
}

MixedState bell_mixture(Dof dof, const std::array<double, 4>& w) {
    Matrix m = Matrix::Zero(4, 4);
    const BellKind kinds[4] = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                               BellKind::PsiMinus};
    for (int k = 0; k < 4; ++k) {
        if (w[k] == 0.0) continue;
        const Vector v = bell_ket(kinds[k]);
        m += w[k] * (v * v.adjoint());
    }
    const auto labels = dof_labels(dof);
    return MixedState(std::move(m), {{labels[0], 2}, {labels[1], 2}});
}

}  // namespace

std::array<std::string, 2> dof_labels(Dof dof) {
    switch (dof) {
        case Dof::Pol: return {"A.pol", "B.pol"};
        case Dof::Spatial: return {"A.spa", "B.spa"};
        case Dof::TimeBin: return {"A.time", "B.time"};
    }
    throw std::invalid_argument("bad dof");
}

Vector bell_ket(BellKind kind) {
    Vector v = Vector::Zero(4);
    switch (kind) {
        case BellKind::PhiPlus: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;
        case BellKind::PhiMinus: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;
        case BellKind::PsiPlus: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;
        case BellKind::PsiMinus: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;
    }
    return v;
}

PureState bell_state(Dof dof, BellKind kind) {
    const auto labels = dof_labels(dof);
    return PureState(bell_ket(kind), {{labels[0], 2}, {labels[1], 2}});
}

MixedState werner_pol(double pp) {
    check_unit_interval(pp, "p_p");
    const double e = (1.0 - pp) / 3.0;
    return bell_mixture(Dof::Pol, {pp, e, e, e});
}

MixedState dof_mixture(Dof dof, double p, NoiseVariant model) {
    check_unit_interval(p, "p");
    if (model == NoiseVariant::BitFlipOnly)
        return bell_mixture(dof, {p, 0.0, 1.0 - p, 0.0});
    const double e = (1.0 - p) / 3.0;
    return bell_mixture(dof, {p, e, e, e});
}

MixedState bell_diagonal(Dof dof, const BellCoeffs& c) {
    return bell_mixture(dof, {c.phi_plus, c.phi_minus, c.psi_plus, c.psi_minus});
}

MixedState hyper_input(const NoiseParams& np, NoiseVariant model) {
    return hyper_input_with_pol(werner_pol(np.pp), np.ps, np.pt, model);
}

MixedState hyper_input_with_pol(const MixedState& pol, double ps, double pt,
                                NoiseVariant model) {
    return tensor(tensor(pol, dof_mixture(Dof::Spatial, ps, model)),
                  dof_mixture(Dof::TimeBin, pt, model));
}

BellDecomposition extract_bell_coeffs(const MixedState& state) {
    if (state.dim() != 4)
        throw std::invalid_argument("extract_bell_coeffs expects a 4x4 state");
    Matrix basis(4, 4);
    basis.col(0) = bell_ket(BellKind::PhiPlus);
    basis.col(1) = bell_ket(BellKind::PhiMinus);
    basis.col(2) = bell_ket(BellKind::PsiPlus);
    basis.col(3) = bell_ket(BellKind::PsiMinus);
    const Matrix b = basis.adjoint() * state.matrix() * basis;

    BellDecomposition out;
    out.coeffs = {b(0, 0).real(), b(1, 1).real(), b(2, 2).real(), b(3, 3).real()};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) out.max_offdiag = std::max(out.max_offdiag, std::abs(b(i, j)));
    return out;
}

}  // namespace hepp
