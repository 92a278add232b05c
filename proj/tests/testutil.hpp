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
//
// Shared test helpers: random states/unitaries and independent oracles
// (full-space embeddings, column-vectorized superoperators).
#pragma once

#include <vector>

#include "qcnn/architect.hpp"
#include "qcnn/linalg.hpp"
#include "qcnn/rng.hpp"
#include "qcnn/simcore.hpp"

namespace qcnn::test {

inline Matrix random_matrix(Rng &rng, int dim) {
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            m(r, c) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return m;
}

/// Haar-ish random unitary via QR of a Ginibre matrix.
inline Matrix random_unitary(Rng &rng, int dim) {
    Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, dim));
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        cplx d = r(i, i);
        q.col(i) *= (std::abs(d) > 1e-14) ? d / std::abs(d) : cplx(1, 0);
    }
    return q;
}

inline PureState random_pure(Rng &rng, int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v(i) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    v /= v.norm();
    return PureState::from_amplitudes(num_qubits, std::move(v));
}

/// Random full-rank density matrix from a Ginibre factor G: G G^dag / tr.
inline MixedState random_density(Rng &rng, int num_qubits) {
    const int dim = 1 << num_qubits;
    Matrix g = random_matrix(rng, dim);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return {num_qubits, std::move(rho)};
}

/// Embeds a 1- or 2-wire operator into the full 2^n space (big-endian).
inline Matrix embed(const Matrix &op, const std::vector<int> &wires, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    const int k = static_cast<int>(wires.size());
    Matrix full = Matrix::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            // Off-wire bits must agree.
            Eigen::Index rmask = r, cmask = c;
            int gr = 0, gc = 0;
            bool ok = true;
            for (int i = 0; i < k; ++i) {
                const int bp = n - 1 - wires[static_cast<std::size_t>(i)];
                gr = (gr << 1) | static_cast<int>((r >> bp) & 1);
                gc = (gc << 1) | static_cast<int>((c >> bp) & 1);
                rmask &= ~(Eigen::Index{1} << bp);
                cmask &= ~(Eigen::Index{1} << bp);
            }
            ok = rmask == cmask;
            if (ok)
                full(r, c) = op(gr, gc);
        }
    }
    return full;
}

/// Column-vectorized superoperator of a Kraus channel embedded on `wires`
/// of an n-qubit system: S = sum conj(K_full) (x) K_full.
inline Matrix superop_of_channel(const KrausChannel &channel,
                                 const std::vector<int> &wires, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix s = Matrix::Zero(dim * dim, dim * dim);
    for (const auto &k : channel.operators()) {
        Matrix kf = embed(k, wires, n);
        s += kron(kf.conjugate(), kf);
    }
    return s;
}

inline Matrix superop_of_unitary(const Matrix &u_full) {
    return kron(u_full.conjugate(), u_full);
}

inline Vector vec_col(const Matrix &rho) {
    Vector v(rho.size());
    Eigen::Index idx = 0;
    for (Eigen::Index c = 0; c < rho.cols(); ++c)
        for (Eigen::Index r = 0; r < rho.rows(); ++r)
            v(idx++) = rho(r, c);
    return v;
}

inline Matrix unvec_col(const Vector &v, Eigen::Index dim) {
    Matrix rho(dim, dim);
    Eigen::Index idx = 0;
    for (Eigen::Index c = 0; c < dim; ++c)
        for (Eigen::Index r = 0; r < dim; ++r)
            rho(r, c) = v(idx++);
    return rho;
}

/// Composite unitary of a gate-only program on n wires (matrix oracle;
/// multiplies full-space embeddings in application order).
inline Matrix unitary_of_program(const std::vector<Instruction> &program,
                                 const std::vector<double> &slot_values,
                                 int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto &instr : program) {
        if (std::holds_alternative<TraceOut>(instr))
            throw std::invalid_argument("program has trace directives");
        const auto &op = std::get<CircuitOp>(instr);
        std::vector<double> angles;
        if (op.kind == GateKind::U3 && op.param_refs.size() == 1)
            angles = {op.scale * slot_values[static_cast<std::size_t>(
                                     op.param_refs[0].slot)],
                      0.0, 0.0};
        else
            for (const auto &ref : op.param_refs)
                angles.push_back(
                    op.scale *
                    slot_values[static_cast<std::size_t>(ref.slot)]);
        const GateMatrix g = build_gate(op.kind, angles);
        std::vector<int> wires(op.wires.begin(),
                               op.wires.begin() + op.num_wires);
        u = embed(g.mat, wires, n) * u;
    }
    return u;
}

inline std::vector<Instruction> as_instructions(
    const std::vector<CircuitOp> &ops) {
    std::vector<Instruction> out;
    out.reserve(ops.size());
    for (const auto &op : ops)
        out.emplace_back(op);
    return out;
}

/// Wraps a raw instruction list as an executable circuit (for hand-built
/// test programs; no layer metadata).
inline QcnnCircuit make_circuit(int total_qubits,
                                std::vector<Instruction> program,
                                int num_slots, int measurement_wire = 0,
                                bool basis_only = true) {
    QcnnCircuit c;
    c.total_qubits = total_qubits;
    c.input_qubits = total_qubits;
    c.program = std::move(program);
    c.num_slots = num_slots;
    c.measurement_wire = measurement_wire;
    c.basis_only = basis_only;
    return c;
}

/// Uniformly random basis-gate circuit (no trace directives) whose
/// parameterized gates reference fresh slots.
inline QcnnCircuit random_basis_circuit(Rng &rng, int num_qubits, int gates,
                                        std::vector<double> *slot_values) {
    std::vector<Instruction> prog;
    int slot = 0;
    for (int g = 0; g < gates; ++g) {
        const int pick = static_cast<int>(rng.below(5));
        const int a = static_cast<int>(rng.below(num_qubits));
        int b = static_cast<int>(rng.below(num_qubits - 1));
        if (b >= a)
            ++b;
        switch (pick) {
        case 0:
            prog.emplace_back(make_op(GateKind::X, a));
            break;
        case 1:
            prog.emplace_back(make_op(GateKind::SX, a));
            break;
        case 2: {
            CircuitOp op = make_op(GateKind::RZ, a);
            op.param_refs = {ParamRef{slot, slot}};
            slot_values->push_back(rng.uniform(0, 6.28));
            ++slot;
            prog.emplace_back(op);
            break;
        }
        case 3: {
            CircuitOp op = make_op(GateKind::U3, a);
            op.param_refs = {ParamRef{slot, slot}};
            slot_values->push_back(rng.uniform(0, 6.28));
            ++slot;
            prog.emplace_back(op);
            break;
        }
        default:
            prog.emplace_back(make_op(GateKind::CX, a, b));
        }
    }
    return make_circuit(num_qubits, std::move(prog), slot);
}

} // namespace qcnn::test
