#pragma once

#include "hepp/qstate.hpp"

#include <array>

namespace hepp {

// Binary encodings fixed once: H / a1,b1 / L -> 0 and V / a2,b2 / S -> 1.
enum class Dof { Pol, Spatial, TimeBin };
enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

enum class NoiseVariant { BitFlipOnly, FullWerner };

struct NoiseParams {
    double pp = 1, ps = 1, pt = 1;
};

/// Weights of (Phi+, Phi-, Psi+, Psi-) for a Bell-diagonal two-qubit state.
/// This order is fixed in every interface and CSV column set.
struct BellCoeffs {
    double phi_plus = 0, phi_minus = 0, psi_plus = 0, psi_minus = 0;

    double sum() const { return phi_plus + phi_minus + psi_plus + psi_minus; }
    double operator[](int i) const {
        return i == 0 ? phi_plus : i == 1 ? phi_minus : i == 2 ? psi_plus : psi_minus;
    }
};

struct BellDecomposition {
    BellCoeffs coeffs;
    double max_offdiag = 0;  // largest |off-diagonal| Bell-basis element
};

std::array<std::string, 2> dof_labels(Dof dof);

/// 4-component ket of the requested Bell state (party-A qubit first).
Vector bell_ket(BellKind kind);

PureState bell_state(Dof dof, BellKind kind);

/// Werner polarization pair: pp Phi+ plus the three error states at equal
/// weight (1-pp)/3 each.
MixedState werner_pol(double pp);

/// Spatial or time-bin pair under the selected channel:
/// BitFlipOnly -> p Phi+ + (1-p) Psi+; FullWerner -> Werner form.
MixedState dof_mixture(Dof dof, double p, NoiseVariant model);

/// Arbitrary Bell-diagonal state on one DOF (multi-round inputs, tests).
MixedState bell_diagonal(Dof dof, const BellCoeffs& coeffs);

/// 64-dimensional input over (A.pol, B.pol, A.spa, B.spa, A.time, B.time).
/// Polarization is always the full Werner channel; spatial/time per `model`.
MixedState hyper_input(const NoiseParams& np, NoiseVariant model);

/// Same, but with an explicit polarization pair (multi-round reuse).
MixedState hyper_input_with_pol(const MixedState& pol, double ps, double pt,
                                NoiseVariant model);

/// Diagonal of a 4x4 state in the Bell basis plus the worst off-diagonal
/// magnitude (reported, not an error).
BellDecomposition extract_bell_coeffs(const MixedState& state);

}  // namespace hepp
