#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace hepp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerance policy: constructive invariants at 1e-12, eigenvalue positivity
// at -1e-10, probability floor below which a branch counts as impossible.
inline constexpr double kConstructTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kProbabilityFloor = 1e-14;

struct Subsystem {
    std::string label;
    int dim = 2;
};

inline bool same_layout(const std::vector<Subsystem>& a, const std::vector<Subsystem>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].label != b[i].label || a[i].dim != b[i].dim) return false;
    return true;
}

int total_dim(const std::vector<Subsystem>& dims);

/// Normalized ket over labeled subsystems. First subsystem is the most
/// significant digit of the basis index.
class PureState {
public:
    PureState(Vector amplitudes, std::vector<Subsystem> dims);

    const Vector& amplitudes() const { return amps_; }
    const std::vector<Subsystem>& dims() const { return dims_; }
    int dim() const { return static_cast<int>(amps_.size()); }

private:
    Vector amps_;
    std::vector<Subsystem> dims_;
};

/// Dense density matrix over labeled subsystems. Hermiticity is enforced on
/// construction; trace is whatever the caller put in (conditional states are
/// normalized explicitly).
class MixedState {
public:
    MixedState(Matrix matrix, std::vector<Subsystem> dims);
    static MixedState from_pure(const PureState& psi);

    const Matrix& matrix() const { return mat_; }
    const std::vector<Subsystem>& dims() const { return dims_; }
    int dim() const { return static_cast<int>(mat_.rows()); }
    double trace() const { return mat_.trace().real(); }

private:
    Matrix mat_;
    std::vector<Subsystem> dims_;
};

/// Unitary, Kraus element, or projector acting on an ordered subset of
/// subsystems, identity elsewhere.
struct SubsystemOp {
    Matrix matrix;
    std::vector<std::string> targets;
};

struct ProjectionResult {
    double probability = 0;
    MixedState conditional;
    bool zero = false;  // probability below kProbabilityFloor
};

MixedState tensor(const MixedState& a, const MixedState& b);
PureState tensor(const PureState& a, const PureState& b);

/// rho -> U rho U^dag with U embedded as identity off the targets.
MixedState apply(const MixedState& state, const SubsystemOp& op);

/// Isometry from the target subsystems into a replacement set of subsystems.
/// The targets are removed from the layout and `outputs` appended at the end.
/// matrix is (prod outputs.dim) x (prod target dims), columns indexed in
/// target order.
MixedState apply_isometry(const MixedState& state, const Matrix& matrix,
                          const std::vector<std::string>& targets,
                          const std::vector<Subsystem>& outputs);

ProjectionResult project(const MixedState& state, const SubsystemOp& projector);

MixedState partial_trace(const MixedState& state, const std::vector<std::string>& keep);

double fidelity_to(const MixedState& state, const PureState& target);

/// Full-dimension embedding of an op (identity off targets); exposed for the
/// serial reference path used in tests.
Matrix embed(const std::vector<Subsystem>& dims, const SubsystemOp& op);

}  // namespace hepp
