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

#include "qcnn/ansatz.hpp"

namespace qcnn {

namespace {

CircuitOp rot(GateKind kind, int wire, ParamRef ref, double scale = 1.0) {
    CircuitOp op = make_op(kind, wire);
    op.param_refs = {ref};
    op.scale = scale;
    return op;
}

CircuitOp u3_full(int wire, ParamRef t, ParamRef p, ParamRef l) {
    CircuitOp op = make_op(GateKind::U3, wire);
    op.param_refs = {t, p, l};
    return op;
}

void check_distinct(int a, int b) {
    if (a == b)
        throw std::invalid_argument("template wires must be distinct");
}

// CRY(theta) with control c, target t as RY(theta/2), CX, RY(-theta/2), CX.
void emit_cry(std::vector<Instruction> &out, int c, int t, ParamRef ref,
              double scale) {
    out.push_back(rot(GateKind::U3, t, ref, 0.5 * scale));
    out.push_back(make_op(GateKind::CX, c, t));
    out.push_back(rot(GateKind::U3, t, ref, -0.5 * scale));
    out.push_back(make_op(GateKind::CX, c, t));
}

} // namespace

AnsatzSet AnsatzSet::from_id(int id) {
    if (id != 1 && id != 2)
        throw std::invalid_argument("ansatz set id must be 1 or 2");
    return {id};
}

std::vector<CircuitOp> conv1_template(int wire_a, int wire_b,
                                      const std::array<ParamRef, 2> &params) {
    check_distinct(wire_a, wire_b);
    return {rot(GateKind::RY, wire_a, params[0]),
            rot(GateKind::RY, wire_b, params[1]),
            make_op(GateKind::CX, wire_a, wire_b)};
}

std::vector<CircuitOp> conv2_template(int wire_a, int wire_b,
                                      const std::array<ParamRef, 15> &params) {
    check_distinct(wire_a, wire_b);
    std::vector<CircuitOp> ops;
    ops.push_back(u3_full(wire_a, params[0], params[1], params[2]));
    ops.push_back(u3_full(wire_b, params[3], params[4], params[5]));
    ops.push_back(make_op(GateKind::CX, wire_b, wire_a));
    ops.push_back(rot(GateKind::RZ, wire_a, params[6]));
    ops.push_back(rot(GateKind::RY, wire_b, params[7]));
    ops.push_back(make_op(GateKind::CX, wire_a, wire_b));
    ops.push_back(rot(GateKind::RY, wire_b, params[8]));
    ops.push_back(make_op(GateKind::CX, wire_b, wire_a));
    ops.push_back(u3_full(wire_a, params[9], params[10], params[11]));
    ops.push_back(u3_full(wire_b, params[12], params[13], params[14]));
    return ops;
}

std::vector<Instruction>
pooling_template(int control_wire, int survivor_wire,
                 const std::optional<std::array<ParamRef, 2>> &params) {
    check_distinct(control_wire, survivor_wire);
    std::vector<Instruction> out;
    if (params) {
        CircuitOp cry = make_op(GateKind::CRY, control_wire, survivor_wire);
        cry.param_refs = {(*params)[0]};
        out.emplace_back(cry);
        // control=0 activation via X conjugation of the control
        out.emplace_back(make_op(GateKind::X, control_wire));
        CircuitOp acry = make_op(GateKind::CRY, control_wire, survivor_wire);
        acry.param_refs = {(*params)[1]};
        out.emplace_back(acry);
        out.emplace_back(make_op(GateKind::X, control_wire));
    }
    out.emplace_back(TraceOut{control_wire});
    return out;
}

std::vector<Instruction>
decompose_to_basis(const std::vector<Instruction> &program) {
    std::vector<Instruction> out;
    out.reserve(program.size() * 2);
    for (const auto &instr : program) {
        if (std::holds_alternative<TraceOut>(instr)) {
            out.push_back(instr);
            continue;
        }
        const auto &op = std::get<CircuitOp>(instr);
        switch (op.kind) {
        case GateKind::ID:
        case GateKind::X:
        case GateKind::SX:
        case GateKind::CX:
        case GateKind::RZ:
            out.emplace_back(op);
            break;
        case GateKind::RY: {
            CircuitOp u = op;
            u.kind = GateKind::U3;
            out.emplace_back(u);
            break;
        }
        case GateKind::U3: {
            if (op.param_refs.size() <= 1) {
                out.emplace_back(op);
                break;
            }
            // U3(t,p,l) = RZ(p) . X . SX . RZ(t) . SX . RZ(l) up to global
            // phase (X.SX = SXdag), so each RZ carries a single angle.
            const int w = op.wires[0];
            out.emplace_back(rot(GateKind::RZ, w, op.param_refs[2], op.scale));
            out.emplace_back(make_op(GateKind::SX, w));
            out.emplace_back(rot(GateKind::RZ, w, op.param_refs[0], op.scale));
            out.emplace_back(make_op(GateKind::SX, w));
            out.emplace_back(make_op(GateKind::X, w));
            out.emplace_back(rot(GateKind::RZ, w, op.param_refs[1], op.scale));
            break;
        }
        case GateKind::CRY: {
            std::vector<Instruction> sub;
            emit_cry(sub, op.wires[0], op.wires[1], op.param_refs[0],
                     op.scale);
            for (auto &s : sub)
                out.push_back(std::move(s));
            break;
        }
        case GateKind::CRZ: {
            const int c = op.wires[0], t = op.wires[1];
            out.emplace_back(
                rot(GateKind::RZ, t, op.param_refs[0], 0.5 * op.scale));
            out.emplace_back(make_op(GateKind::CX, c, t));
            out.emplace_back(
                rot(GateKind::RZ, t, op.param_refs[0], -0.5 * op.scale));
            out.emplace_back(make_op(GateKind::CX, c, t));
            break;
        }
        default:
            throw ValidationError("cannot decompose unknown gate kind");
        }
    }
    return out;
}

} // namespace qcnn
