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
/**
 * @file
 * Parameterized circuit templates (convolution circuits 1 and 2, pooling
 * circuit) and decomposition into the {ID, RZ, SX, X, U3, CX} basis.
 */
#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "qcnn/simcore.hpp"

namespace qcnn {

/// Reference to one entry of a parameter store. Slots that must stay equal
/// under parameter sharing carry the same share_group.
struct ParamRef {
    int slot;
    int share_group;
};

/// One gate application. `param_refs` is empty for constant gates; `scale`
/// multiplies every bound angle (+-1/2 for decomposed controlled rotations).
/// A U3 op carries either three refs (fully parameterized, scale 1) or one
/// ref (a plain Y rotation written as U3(scale*theta, 0, 0)).
struct CircuitOp {
    GateKind kind;
    std::array<int, 2> wires{-1, -1};
    int num_wires = 1;
    std::vector<ParamRef> param_refs;
    double scale = 1.0;
};

/// Directive to discard (trace out) a wire at this point of the program.
struct TraceOut {
    int wire;
};

using Instruction = std::variant<CircuitOp, TraceOut>;

inline CircuitOp make_op(GateKind kind, int w0) {
    CircuitOp op{kind, {w0, -1}, 1, {}, 1.0};
    return op;
}

inline CircuitOp make_op(GateKind kind, int w0, int w1) {
    CircuitOp op{kind, {w0, w1}, 2, {}, 1.0};
    return op;
}

/// Which convolution/pooling templates a circuit is built from.
/// Set 1: conv circuit 1 (2 params) + parameterized pooling (2 params).
/// Set 2: conv circuit 2 (15 params, arbitrary SU(4)) + trace-only pooling.
struct AnsatzSet {
    int id; // 1 or 2

    static AnsatzSet set1() { return {1}; }
    static AnsatzSet set2() { return {2}; }
    static AnsatzSet from_id(int id);

    int conv_param_count() const { return id == 1 ? 2 : 15; }
    int pool_param_count() const { return id == 1 ? 2 : 0; }
    bool parameterized_pool() const { return id == 1; }
};

/// Convolution circuit 1: RY(t0) on wire_a, RY(t1) on wire_b, CX(a -> b).
std::vector<CircuitOp> conv1_template(int wire_a, int wire_b,
                                      const std::array<ParamRef, 2> &params);

/// Convolution circuit 2: the 3-CNOT SU(4) parameterization
///   U3(p0..p2) (x) U3(p3..p5); CX(b->a); RZ(p6) on a, RY(p7) on b;
///   CX(a->b); RY(p8) on b; CX(b->a); U3(p9..p11) (x) U3(p12..p14).
/// With all angles zero this reduces to SWAP (the three CX do not cancel).
std::vector<CircuitOp> conv2_template(int wire_a, int wire_b,
                                      const std::array<ParamRef, 15> &params);

/// Pooling: if `params` is set, CRY(t0) activated on control=1 followed by
/// the control=0-activated RY(t1) (X-conjugated CRY), then a trace directive
/// on the control wire. Without params only the trace directive is emitted.
std::vector<Instruction>
pooling_template(int control_wire, int survivor_wire,
                 const std::optional<std::array<ParamRef, 2>> &params);

/// Rewrites a program so it contains only {ID, RZ, SX, X, U3, CX} and every
/// parameterized gate carries exactly one ParamRef:
///   CRY(t)        -> RY(t/2) on target, CX, RY(-t/2), CX   (scales +-1/2)
///   RY(a)         -> U3(a, 0, 0)
///   U3 with 3 refs-> RZ(lambda), SX, RZ(theta), SX, X, RZ(phi)
/// The composite unitary is preserved up to global phase. Throws
/// ValidationError on a gate kind outside the template vocabulary.
std::vector<Instruction>
decompose_to_basis(const std::vector<Instruction> &program);

} // namespace qcnn
