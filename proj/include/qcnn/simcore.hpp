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
 * Dense pure-state / mixed-state simulation engine: gate matrices, unitary
 * and channel application on arbitrary wires, partial trace, and Pauli-Z
 * expectation values.
 *
 * Wire convention: wire 0 is the topmost wire of a circuit diagram and maps
 * to the MOST significant bit of the basis-state index (big-endian). Global
 * phase is not tracked anywhere.
 */
#pragma once

#include <vector>

#include "qcnn/types.hpp"

namespace qcnn {

enum class GateKind { ID, X, SX, RY, RZ, U3, CX, CRY, CRZ };

const char *to_string(GateKind kind);

/// Number of wires the gate acts on (1 or 2).
int gate_arity(GateKind kind);

/// Number of angle parameters the gate takes (RY/RZ/CRY/CRZ: 1, U3: 3).
int gate_param_count(GateKind kind);

struct GateMatrix {
    GateKind kind;
    int arity;
    Matrix mat; // 2x2 or 4x4
};

/// Builds the gate matrix for `kind` with the given angles (radians).
/// Controlled gates are |0><0| (x) I + |1><1| (x) U with the control on the
/// first wire. Throws std::invalid_argument on a parameter-count mismatch.
GateMatrix build_gate(GateKind kind, const std::vector<double> &params = {});

struct PureState {
    int num_qubits;
    Vector amplitudes; // length 2^num_qubits

    static PureState zero(int num_qubits);
    static PureState from_amplitudes(int num_qubits, Vector amps);

    /// Checks unit norm (tol) and dimension; throws ValidationError.
    void validate(double tol = 1e-12) const;
};

struct MixedState {
    int num_qubits;
    Matrix rho; // 2^n x 2^n

    static MixedState zero(int num_qubits);

    /// Checks Hermiticity (1e-10), unit trace (1e-10) and positive
    /// semidefiniteness (min eigenvalue >= -1e-9); throws ValidationError.
    void validate(double herm_tol = 1e-10, double trace_tol = 1e-10,
                  double psd_slack = 1e-9) const;
};

class KrausChannel {
  public:
    /// Validates completeness sum_i K_i^dag K_i = I within `tol`
    /// (ValidationError beyond it).
    KrausChannel(int arity, std::vector<Matrix> operators, double tol = 1e-8);

    int arity() const { return arity_; }
    const std::vector<Matrix> &operators() const { return operators_; }

    /// Max deviation of sum_i K_i^dag K_i from the identity.
    double completeness_defect() const;

    static KrausChannel identity(int arity);

  private:
    int arity_;
    std::vector<Matrix> operators_;
};

/// Single-qubit Pauli-Z observable on one wire.
struct Observable {
    int wire;
};

void apply_unitary(PureState &state, const GateMatrix &gate,
                   const std::vector<int> &wires);
void apply_unitary(MixedState &state, const GateMatrix &gate,
                   const std::vector<int> &wires);

/// rho <- sum_i K_i rho K_i^dag on the designated wires.
void apply_channel(MixedState &state, const KrausChannel &channel,
                   const std::vector<int> &wires);

/// Reduced density matrix on the wires not listed in `traced_wires`.
/// Remaining wires keep their relative order and are renumbered from 0.
MixedState partial_trace(const MixedState &state,
                         const std::vector<int> &traced_wires);

double expectation(const PureState &state, const Observable &obs);
double expectation(const MixedState &state, const Observable &obs);

MixedState purestate_to_mixed(const PureState &state);

} // namespace qcnn
