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

#include "qcnn/exec.hpp"

#include <cmath>

#include "qcnn/detail/kernels.hpp"

namespace qcnn {

namespace {

void fill_matrix(BoundInstr &bi, const CircuitOp &op, const ParamStore &params,
                 double delta) {
    std::vector<double> angles;
    switch (op.kind) {
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRY:
    case GateKind::CRZ:
        angles = {op.scale * params.values.at(op.param_refs.at(0).slot) +
                  delta};
        break;
    case GateKind::U3:
        if (op.param_refs.size() == 3) {
            angles = {op.scale * params.values.at(op.param_refs[0].slot),
                      op.scale * params.values.at(op.param_refs[1].slot),
                      op.scale * params.values.at(op.param_refs[2].slot)};
        } else {
            angles = {op.scale * params.values.at(op.param_refs.at(0).slot) +
                          delta,
                      0.0, 0.0};
        }
        break;
    default:
        break; // constant gate
    }
    const GateMatrix g = build_gate(op.kind, angles);
    bi.arity = g.arity;
    for (Eigen::Index r = 0; r < g.mat.rows(); ++r)
        for (Eigen::Index c = 0; c < g.mat.cols(); ++c)
            bi.m[static_cast<std::size_t>(r * g.mat.cols() + c)] = g.mat(r, c);
}

} // namespace

BoundCircuit::BoundCircuit(const QcnnCircuit &circuit, const ParamStore &params)
    : circuit_(&circuit) {
    if (static_cast<int>(params.values.size()) != circuit.num_slots)
        throw std::invalid_argument(
            "parameter store has " + std::to_string(params.values.size()) +
            " values, circuit expects " + std::to_string(circuit.num_slots));
    instrs_.reserve(circuit.program.size());
    for (std::size_t i = 0; i < circuit.program.size(); ++i) {
        const auto &instr = circuit.program[i];
        BoundInstr bi;
        bi.op_index = static_cast<int>(i);
        if (const auto *tr = std::get_if<TraceOut>(&instr)) {
            bi.is_trace = true;
            bi.trace_wire = tr->wire;
        } else {
            const auto &op = std::get<CircuitOp>(instr);
            bi.kind = op.kind;
            bi.wires = op.wires;
            fill_matrix(bi, op, params, 0.0);
            if (op.param_refs.size() == 1 && gate_arity(op.kind) == 1)
                occurrences_.push_back({static_cast<int>(instrs_.size()),
                                        op.param_refs[0].slot, op.scale});
        }
        instrs_.push_back(bi);
    }
}

void BoundCircuit::rebind(const ParamStore &params) {
    for (auto &bi : instrs_) {
        if (bi.is_trace)
            continue;
        const auto &op = std::get<CircuitOp>(circuit_->program[bi.op_index]);
        if (!op.param_refs.empty())
            fill_matrix(bi, op, params, 0.0);
    }
}

void BoundCircuit::shift_occurrence(int occurrence_index, double delta,
                                    const ParamStore &params) {
    const Occurrence &occ = occurrences_.at(occurrence_index);
    BoundInstr &bi = instrs_[occ.instr];
    const auto &op = std::get<CircuitOp>(circuit_->program[bi.op_index]);
    fill_matrix(bi, op, params, delta);
}

PureState lift_input(const PureState &input, int total_qubits) {
    if (input.num_qubits > total_qubits)
        throw std::invalid_argument("input has more qubits than the circuit");
    if (input.num_qubits == total_qubits)
        return input;
    const int extra = total_qubits - input.num_qubits;
    Vector amps = Vector::Zero(Eigen::Index{1} << total_qubits);
    for (Eigen::Index i = 0; i < input.amplitudes.size(); ++i)
        amps(i << extra) = input.amplitudes(i);
    return {total_qubits, std::move(amps)};
}

double run_pure(const BoundCircuit &bound, const PureState &input) {
    const QcnnCircuit &circ = bound.circuit();
    PureState state = lift_input(input, circ.total_qubits);
    const int n = circ.total_qubits;
    cplx *v = state.amplitudes.data();
    const std::size_t dim = std::size_t{1} << n;

    for (const auto &bi : bound.instrs()) {
        if (bi.is_trace)
            continue; // deferred discard: the wire is never used again
        const int b0 = n - 1 - bi.wires[0];
        switch (bi.kind) {
        case GateKind::ID:
            break;
        case GateKind::X:
            detail::apply_x_1bit(v, dim, b0);
            break;
        case GateKind::RZ:
            detail::apply_diag_1bit(v, dim, b0, bi.m[0], bi.m[3]);
            break;
        case GateKind::CX:
            detail::apply_cx_bits(v, dim, b0, n - 1 - bi.wires[1]);
            break;
        default:
            if (bi.arity == 1)
                detail::apply_1bit(v, dim, b0, bi.m.data());
            else
                detail::apply_2bit(v, dim, b0, n - 1 - bi.wires[1],
                                   bi.m.data());
        }
    }

    const std::size_t mask = std::size_t{1} << (n - 1 - circ.measurement_wire);
    double acc = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double p = std::norm(v[i]);
        acc += (i & mask) ? -p : p;
    }
    return acc;
}

} // namespace qcnn
