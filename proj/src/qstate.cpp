#include "hepp/qstate.hpp"

#include <algorithm>
#include <stdexcept>

namespace hepp {
namespace {

std::vector<int> strides_of(const std::vector<Subsystem>& dims) {
    std::vector<int> s(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        s[i] = s[i + 1] * dims[i + 1].dim;
    return s;
}

std::vector<size_t> target_positions(const std::vector<Subsystem>& dims,
                                     const std::vector<std::string>& targets) {
    std::vector<size_t> pos;
    pos.reserve(targets.size());
    for (const auto& t : targets) {
        auto it = std::find_if(dims.begin(), dims.end(),
                               [&](const Subsystem& s) { return s.label == t; });
        if (it == dims.end())
            throw std::invalid_argument("unknown subsystem label: " + t);
        pos.push_back(static_cast<size_t>(it - dims.begin()));
    }
    return pos;
}

double hermiticity_residual(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

int total_dim(const std::vector<Subsystem>& dims) {
    int d = 1;
    for (const auto& s : dims) d *= s.dim;
    return d;
}

PureState::PureState(Vector amplitudes, std::vector<Subsystem> dims)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (amps_.size() != total_dim(dims_))
        throw std::invalid_argument("amplitude vector length does not match subsystem dims");
    if (std::abs(amps_.norm() - 1.0) > kConstructTol)
        throw std::invalid_argument("pure state is not normalized");
}

MixedState::MixedState(Matrix matrix, std::vector<Subsystem> dims)
    : mat_(std::move(matrix)), dims_(std::move(dims)) {
    if (mat_.rows() != mat_.cols())
        throw std::invalid_argument("density matrix must be square");
    if (mat_.rows() != total_dim(dims_))
        throw std::invalid_argument("matrix dimension does not match subsystem dims");
    if (hermiticity_residual(mat_) > 10 * kConstructTol)
        throw std::invalid_argument("density matrix is not Hermitian");
}

MixedState MixedState::from_pure(const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return MixedState(v * v.adjoint(), psi.dims());
}

MixedState tensor(const MixedState& a, const MixedState& b) {
    const int da = a.dim(), db = b.dim();
    Matrix m(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    std::vector<Subsystem> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return MixedState(std::move(m), std::move(dims));
}

PureState tensor(const PureState& a, const PureState& b) {
    const int da = a.dim(), db = b.dim();
    Vector v(da * db);
    for (int i = 0; i < da; ++i)
        v.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
    std::vector<Subsystem> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return PureState(std::move(v), std::move(dims));
}

Matrix embed(const std::vector<Subsystem>& dims, const SubsystemOp& op) {
    const auto pos = target_positions(dims, op.targets);
    const auto strides = strides_of(dims);
    const int D = total_dim(dims);

    int dop = 1;
    for (auto p : pos) dop *= dims[p].dim;
    if (op.matrix.rows() != dop || op.matrix.cols() != dop)
        throw std::invalid_argument("op matrix dimension does not match its targets");

    Matrix full = Matrix::Zero(D, D);
    for (int j = 0; j < D; ++j) {
        // target digits of column j, packed in target order
        int col = 0;
        for (auto p : pos) col = col * dims[p].dim + (j / strides[p]) % dims[p].dim;
        const int base = [&] {
            int b = j;
            for (auto p : pos) b -= ((j / strides[p]) % dims[p].dim) * strides[p];
            return b;
        }();
        for (int r = 0; r < dop; ++r) {
            if (op.matrix(r, col) == Complex(0)) continue;
            int i = base, rr = r;
            for (int k = static_cast<int>(pos.size()) - 1; k >= 0; --k) {
                const int d = dims[pos[k]].dim;
                i += (rr % d) * strides[pos[k]];
                rr /= d;
            }
            full(i, j) = op.matrix(r, col);
        }
    }
    return full;
}

MixedState apply(const MixedState& state, const SubsystemOp& op) {
    const Matrix u = embed(state.dims(), op);
    Matrix m = u * state.matrix() * u.adjoint();
    m = Complex(0.5) * (m + Matrix(m.adjoint()));
    return MixedState(std::move(m), state.dims());
}

MixedState apply_isometry(const MixedState& state, const Matrix& matrix,
                          const std::vector<std::string>& targets,
                          const std::vector<Subsystem>& outputs) {
    const auto& dims = state.dims();
    const auto pos = target_positions(dims, targets);
    const auto strides = strides_of(dims);
    const int D = state.dim();

    int din = 1;
    for (auto p : pos) din *= dims[p].dim;
    const int dout = total_dim(outputs);
    if (matrix.cols() != din || matrix.rows() != dout)
        throw std::invalid_argument("isometry shape does not match targets/outputs");

    // Output layout: non-target subsystems in original order, outputs appended.
    std::vector<Subsystem> out_dims;
    for (size_t k = 0; k < dims.size(); ++k)
        if (std::find(pos.begin(), pos.end(), k) == pos.end()) out_dims.push_back(dims[k]);
    const int rest = total_dim(out_dims);
    out_dims.insert(out_dims.end(), outputs.begin(), outputs.end());

    Matrix K = Matrix::Zero(rest * dout, D);
    for (int j = 0; j < D; ++j) {
        int col = 0;
        for (auto p : pos) col = col * dims[p].dim + (j / strides[p]) % dims[p].dim;
        int nt = 0;
        for (size_t k = 0; k < dims.size(); ++k) {
            if (std::find(pos.begin(), pos.end(), k) != pos.end()) continue;
            nt = nt * dims[k].dim + (j / strides[k]) % dims[k].dim;
        }
        for (int r = 0; r < dout; ++r)
            if (matrix(r, col) != Complex(0)) K(nt * dout + r, j) = matrix(r, col);
    }
    Matrix m = K * state.matrix() * K.adjoint();
    m = Complex(0.5) * (m + Matrix(m.adjoint()));
    return MixedState(std::move(m), std::move(out_dims));
}

ProjectionResult project(const MixedState& state, const SubsystemOp& projector) {
    if ((projector.matrix * projector.matrix - projector.matrix).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("projector is not idempotent");
    const Matrix p = embed(state.dims(), projector);
    Matrix m = p * state.matrix() * p.adjoint();
    m = Complex(0.5) * (m + Matrix(m.adjoint()));
    const double prob = m.trace().real();
    if (prob < kProbabilityFloor)
        return {0.0, MixedState(Matrix::Zero(state.dim(), state.dim()), state.dims()), true};
    return {prob, MixedState(m / prob, state.dims()), false};
}

MixedState partial_trace(const MixedState& state, const std::vector<std::string>& keep) {
    if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
    const auto& dims = state.dims();
    const auto keep_pos = target_positions(dims, keep);
    const auto strides = strides_of(dims);

    std::vector<size_t> trace_pos;
    for (size_t k = 0; k < dims.size(); ++k)
        if (std::find(keep_pos.begin(), keep_pos.end(), k) == keep_pos.end())
            trace_pos.push_back(k);

    std::vector<Subsystem> out_dims;
    int dk = 1;
    for (auto p : keep_pos) {
        out_dims.push_back(dims[p]);
        dk *= dims[p].dim;
    }
    int dt = 1;
    for (auto p : trace_pos) dt *= dims[p].dim;

    auto compose = [&](int kidx, int tidx) {
        int full = 0, k = kidx, t = tidx;
        for (int n = static_cast<int>(keep_pos.size()) - 1; n >= 0; --n) {
            const int d = dims[keep_pos[n]].dim;
            full += (k % d) * strides[keep_pos[n]];
            k /= d;
        }
        for (int n = static_cast<int>(trace_pos.size()) - 1; n >= 0; --n) {
            const int d = dims[trace_pos[n]].dim;
            full += (t % d) * strides[trace_pos[n]];
            t /= d;
        }
        return full;
    };

    Matrix m = Matrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j) {
            Complex acc = 0;
            for (int t = 0; t < dt; ++t) acc += state.matrix()(compose(i, t), compose(j, t));
            m(i, j) = acc;
        }
    return MixedState(std::move(m), std::move(out_dims));
}

double fidelity_to(const MixedState& state, const PureState& target) {
    if (!same_layout(state.dims(), target.dims()))
        throw std::invalid_argument("fidelity_to: dimension mismatch");
    const Complex v = target.amplitudes().adjoint() * state.matrix() * target.amplitudes();
    return v.real();
}

}  // namespace hepp
