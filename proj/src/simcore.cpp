// Copyright 2026 The qcnnpad authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcnn/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qcnn/detail/kernels.hpp"
#include "qcnn/linalg.hpp"

namespace qcnn {

namespace {

Matrix mat_ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Matrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

Matrix mat_rz(double lambda) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(cplx(0, -lambda / 2));
    m(1, 1) = std::exp(cplx(0, lambda / 2));
    return m;
}

Matrix mat_sx() {
    Matrix m(2, 2);
    m << cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5);
    return m;
}

Matrix mat_u3(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Matrix m(2, 2);
    m(0, 0) = c;
    m(0, 1) = -std::exp(cplx(0, lambda)) * s;
    m(1, 0) = std::exp(cplx(0, phi)) * s;
    m(1, 1) = std::exp(cplx(0, phi + lambda)) * c;
    return m;
}

Matrix controlled(const Matrix &u) {
    Matrix m = Matrix::Identity(4, 4);
    m.block(2, 2, 2, 2) = u;
    return m;
}

void check_wires(int num_qubits, const std::vector<int> &wires, int arity) {
    if (static_cast<int>(wires.size()) != arity)
        throw std::invalid_argument("wire count does not match gate arity");
    std::set<int> seen;
    for (int w : wires) {
        if (w < 0 || w >= num_qubits)
            throw std::invalid_argument("wire index out of range");
        if (!seen.insert(w).second)
            throw std::invalid_argument("duplicate wire index");
    }
}

void copy_rowmajor(const Matrix &m, cplx *out) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            *out++ = m(r, c);
}

// Applies a (possibly non-unitary) 1- or 2-wire matrix to a flat amplitude
// array, addressing the given bit positions (most significant first).
void apply_matrix_bits(cplx *v, std::size_t dim, const Matrix &m,
                       const int *bps, int arity) {
    cplx buf[16];
    copy_rowmajor(m, buf);
    if (arity == 1)
        detail::apply_1bit(v, dim, bps[0], buf);
    else
        detail::apply_2bit(v, dim, bps[0], bps[1], buf);
}

} // namespace

const char *to_string(GateKind kind) {
    switch (kind) {
    case GateKind::ID:
        return "ID";
    case GateKind::X:
        return "X";
    case GateKind::SX:
        return "SX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::U3:
        return "U3";
    case GateKind::CX:
        return "CX";
    case GateKind::CRY:
        return "CRY";
    case GateKind::CRZ:
        return "CRZ";
    }
    return "?";
}

int gate_arity(GateKind kind) {
    switch (kind) {
    case GateKind::CX:
    case GateKind::CRY:
    case GateKind::CRZ:
        return 2;
    default:
        return 1;
    }
}

int gate_param_count(GateKind kind) {
    switch (kind) {
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRY:
    case GateKind::CRZ:
        return 1;
    case GateKind::U3:
        return 3;
    default:
        return 0;
    }
}

GateMatrix build_gate(GateKind kind, const std::vector<double> &params) {
    if (static_cast<int>(params.size()) != gate_param_count(kind))
        throw std::invalid_argument(std::string("gate ") + to_string(kind) +
                                    " expects " +
                                    std::to_string(gate_param_count(kind)) +
                                    " parameter(s), got " +
                                    std::to_string(params.size()));
    switch (kind) {
    case GateKind::ID:
        return {kind, 1, identity(2)};
    case GateKind::X:
        return {kind, 1, pauli_x()};
    case GateKind::SX:
        return {kind, 1, mat_sx()};
    case GateKind::RY:
        return {kind, 1, mat_ry(params[0])};
    case GateKind::RZ:
        return {kind, 1, mat_rz(params[0])};
    case GateKind::U3:
        return {kind, 1, mat_u3(params[0], params[1], params[2])};
    case GateKind::CX:
        return {kind, 2, controlled(pauli_x())};
    case GateKind::CRY:
        return {kind, 2, controlled(mat_ry(params[0]))};
    case GateKind::CRZ:
        return {kind, 2, controlled(mat_rz(params[0]))};
    }
    throw std::invalid_argument("unknown gate kind");
}

PureState PureState::zero(int num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("num_qubits must be >= 1");
    Vector amps = Vector::Zero(Eigen::Index{1} << num_qubits);
    amps(0) = 1.0;
    return {num_qubits, std::move(amps)};
}

PureState PureState::from_amplitudes(int num_qubits, Vector amps) {
    PureState s{num_qubits, std::move(amps)};
    s.validate();
    return s;
}

void PureState::validate(double tol) const {
    if (amplitudes.size() != (Eigen::Index{1} << num_qubits))
        throw ValidationError("amplitude vector has wrong length");
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol)
        throw ValidationError("state norm deviates from 1 by " +
                              std::to_string(std::abs(norm2 - 1.0)));
}

MixedState MixedState::zero(int num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("num_qubits must be >= 1");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Matrix rho = Matrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return {num_qubits, std::move(rho)};
}

void MixedState::validate(double herm_tol, double trace_tol,
                          double psd_slack) const {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (rho.rows() != dim || rho.cols() != dim)
        throw ValidationError("density matrix has wrong dimension");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw ValidationError("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > trace_tol ||
        std::abs(rho.trace().imag()) > trace_tol)
        throw ValidationError("density matrix trace deviates from 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_slack)
        throw ValidationError("density matrix is not positive semidefinite "
                              "(min eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()) +
                              ")");
}

KrausChannel::KrausChannel(int arity, std::vector<Matrix> operators,
                           double tol)
    : arity_(arity), operators_(std::move(operators)) {
    if (arity_ < 1 || arity_ > 2)
        throw std::invalid_argument("channel arity must be 1 or 2");
    if (operators_.empty())
        throw std::invalid_argument("channel needs at least one operator");
    const Eigen::Index dim = Eigen::Index{1} << arity_;
    for (const auto &k : operators_)
        if (k.rows() != dim || k.cols() != dim)
            throw std::invalid_argument("Kraus operator dimension mismatch");
    if (completeness_defect() > tol)
        throw ValidationError("channel is not trace preserving (completeness "
                              "defect " +
                              std::to_string(completeness_defect()) + ")");
}

double KrausChannel::completeness_defect() const {
    const Eigen::Index dim = operators_.front().rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto &k : operators_)
        sum += k.adjoint() * k;
    return (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

KrausChannel KrausChannel::identity(int arity) {
    return KrausChannel(arity,
                        {Matrix::Identity(Eigen::Index{1} << arity,
                                          Eigen::Index{1} << arity)});
}

void apply_unitary(PureState &state, const GateMatrix &gate,
                   const std::vector<int> &wires) {
    check_wires(state.num_qubits, wires, gate.arity);
    const int n = state.num_qubits;
    int bps[2];
    for (std::size_t i = 0; i < wires.size(); ++i)
        bps[i] = n - 1 - wires[i];
    apply_matrix_bits(state.amplitudes.data(),
                      static_cast<std::size_t>(state.amplitudes.size()),
                      gate.mat, bps, gate.arity);
}

void apply_unitary(MixedState &state, const GateMatrix &gate,
                   const std::vector<int> &wires) {
    check_wires(state.num_qubits, wires, gate.arity);
    const int n = state.num_qubits;
    const std::size_t dim2 = std::size_t{1} << (2 * n);
    // Column-major rho flattened as index = col*2^n + row: wires act on the
    // row bits with U and on the column bits with conj(U).
    cplx *flat = state.rho.data();
    int row_bps[2], col_bps[2];
    for (std::size_t i = 0; i < wires.size(); ++i) {
        row_bps[i] = n - 1 - wires[i];
        col_bps[i] = n + (n - 1 - wires[i]);
    }
    apply_matrix_bits(flat, dim2, gate.mat, row_bps, gate.arity);
    apply_matrix_bits(flat, dim2, gate.mat.conjugate(), col_bps, gate.arity);
}

void apply_channel(MixedState &state, const KrausChannel &channel,
                   const std::vector<int> &wires) {
    check_wires(state.num_qubits, wires, channel.arity());
    const int n = state.num_qubits;
    const int k = channel.arity();
    const Eigen::Index gd = Eigen::Index{1} << k;
    // Local superoperator S = sum conj(K) (x) K acting jointly on the column
    // and row bits of the flattened density matrix.
    Matrix superop = Matrix::Zero(gd * gd, gd * gd);
    for (const auto &kr : channel.operators())
        superop += kron(kr.conjugate(), kr);
    int bps[4];
    for (int i = 0; i < k; ++i) {
        bps[i] = n + (n - 1 - wires[i]);     // column bits
        bps[k + i] = n - 1 - wires[i];       // row bits
    }
    std::vector<cplx> buf(static_cast<std::size_t>(gd * gd) * gd * gd);
    copy_rowmajor(superop, buf.data());
    detail::apply_kbit(state.rho.data(), std::size_t{1} << (2 * n), bps, 2 * k,
                       buf.data());
}

MixedState partial_trace(const MixedState &state,
                         const std::vector<int> &traced_wires) {
    const int n = state.num_qubits;
    if (traced_wires.empty())
        throw std::invalid_argument("no wires to trace");
    std::set<int> traced(traced_wires.begin(), traced_wires.end());
    if (traced.size() != traced_wires.size())
        throw std::invalid_argument("duplicate traced wire");
    for (int w : traced)
        if (w < 0 || w >= n)
            throw std::invalid_argument("traced wire out of range");
    if (static_cast<int>(traced.size()) == n)
        throw std::invalid_argument("cannot trace out all qubits");

    std::vector<int> kept;
    for (int w = 0; w < n; ++w)
        if (!traced.count(w))
            kept.push_back(w);
    const int nk = static_cast<int>(kept.size());
    const int nt = n - nk;
    std::vector<int> traced_sorted(traced.begin(), traced.end());

    const std::size_t dk = std::size_t{1} << nk;
    const std::size_t dt = std::size_t{1} << nt;
    MixedState out{nk, Matrix::Zero(dk, dk)};

    // Spread a reduced index over the kept-wire bit positions of the full
    // index (big-endian on both sides).
    auto spread = [&](std::size_t idx, const std::vector<int> &wlist) {
        std::size_t full = 0;
        const int m = static_cast<int>(wlist.size());
        for (int i = 0; i < m; ++i)
            if ((idx >> (m - 1 - i)) & 1)
                full |= std::size_t{1} << (n - 1 - wlist[i]);
        return full;
    };

    for (std::size_t r = 0; r < dk; ++r) {
        const std::size_t rbase = spread(r, kept);
        for (std::size_t c = 0; c < dk; ++c) {
            const std::size_t cbase = spread(c, kept);
            cplx acc(0, 0);
            for (std::size_t t = 0; t < dt; ++t) {
                const std::size_t tbits = spread(t, traced_sorted);
                acc += state.rho(static_cast<Eigen::Index>(rbase | tbits),
                                 static_cast<Eigen::Index>(cbase | tbits));
            }
            out.rho(static_cast<Eigen::Index>(r),
                    static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return out;
}

double expectation(const PureState &state, const Observable &obs) {
    if (obs.wire < 0 || obs.wire >= state.num_qubits)
        throw std::invalid_argument("observable wire out of range");
    const std::size_t mask = std::size_t{1}
                             << (state.num_qubits - 1 - obs.wire);
    double acc = 0;
    const std::size_t dim = static_cast<std::size_t>(state.amplitudes.size());
    for (std::size_t i = 0; i < dim; ++i) {
        const double p = std::norm(state.amplitudes(i));
        acc += (i & mask) ? -p : p;
    }
    return acc;
}

double expectation(const MixedState &state, const Observable &obs) {
    if (obs.wire < 0 || obs.wire >= state.num_qubits)
        throw std::invalid_argument("observable wire out of range");
    const std::size_t mask = std::size_t{1}
                             << (state.num_qubits - 1 - obs.wire);
    const std::size_t dim = std::size_t{1} << state.num_qubits;
    cplx acc(0, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        const cplx d = state.rho(static_cast<Eigen::Index>(i),
                                 static_cast<Eigen::Index>(i));
        acc += (i & mask) ? -d : d;
    }
    if (std::abs(acc.imag()) > 1e-10)
        throw ValidationError("expectation has imaginary residue " +
                              std::to_string(acc.imag()));
    return acc.real();
}

MixedState purestate_to_mixed(const PureState &state) {
    return {state.num_qubits,
            state.amplitudes * state.amplitudes.adjoint()};
}

} // namespace qcnn
