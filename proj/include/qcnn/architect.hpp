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
 * QCNN circuit construction for arbitrary input qubit counts K >= 2 under
 * five padding methods, plus closed-form and structural resource reports.
 *
 * Layer conventions (see also the per-method notes on plan_architecture):
 *  - Rosters list wires top-down; ancillas are appended at the bottom.
 *  - Even rosters run the convolution ring in two depth steps:
 *    (w1,w2),(w3,w4),... then (w2,w3),...,(wn,w1). Odd rosters (skip
 *    pooling) need three steps for the full ring.
 *  - Pooling pairs top-down as (w1,w2),(w3,w4),...; the lower wire is the
 *    control and is discarded, the upper wire survives.
 *  - The final 2-qubit layer applies a single convolution per repetition
 *    and one pooling; the survivor carries the measurement.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "qcnn/ansatz.hpp"

namespace qcnn {

enum class PaddingMethod {
    ZeroData,        // classical zero-data padding to 2^m qubits
    PeriodicData,    // classical periodic-data padding to 2^m qubits
    SkipPooling,     // odd layers skip pooling on the last wire
    LayerWiseAncilla,// fresh |0> ancilla per odd layer
    SingleAncilla    // one ancilla reused across odd layers, never reset
};

const char *to_string(PaddingMethod method);
PaddingMethod padding_method_from_string(const std::string &name);

inline bool is_classical_padding(PaddingMethod m) {
    return m == PaddingMethod::ZeroData || m == PaddingMethod::PeriodicData;
}

/// ceil(log2(k)) for k >= 1.
int ceil_log2(int k);

/// Parity indicator Y_i = ceil(K / 2^(i-1)) mod 2 (1-based layer index).
int layer_parity(int K, int layer_index);

struct PoolPair {
    int control;  // discarded wire
    int survivor;
};

struct LayerPlan {
    int index = 0; // 1-based
    std::vector<int> roster;
    int reps = 1;
    // Depth steps of one ring repetition; each step is a set of disjoint
    // (wire_a, wire_b) convolution pairs.
    std::vector<std::vector<std::pair<int, int>>> conv_steps;
    std::vector<PoolPair> pool_pairs;
    std::optional<int> ancilla_added;
    int parity = 0; // Y_i of the data-qubit count
    std::optional<int> skipped_wire;
};

struct QcnnCircuit {
    int total_qubits = 0;
    int input_qubits = 0; // K
    PaddingMethod method = PaddingMethod::ZeroData;
    AnsatzSet ansatz = AnsatzSet::set1();
    bool sharing = false;
    std::vector<Instruction> program;
    int num_slots = 0;
    int measurement_wire = 0;
    std::vector<LayerPlan> layers;
    bool basis_only = false; // true once decomposed to the hardware basis

    std::vector<int> reps() const;
};

struct LayerResources {
    int conv_instances = 0;
    int pool_instances = 0;
    int depth = 0;
};

struct ResourceReport {
    int ancilla_qubits = 0;
    int logical_depth = 0;
    long params_shared = 0;
    long params_unshared = 0;
    std::vector<LayerResources> per_layer;

    bool operator==(const ResourceReport &other) const {
        return ancilla_qubits == other.ancilla_qubits &&
               logical_depth == other.logical_depth &&
               params_shared == other.params_shared &&
               params_unshared == other.params_unshared;
    }
};

/// Builds the full QCNN program for K input qubits. `reps` holds l_1..l_m
/// with m = ceil(log2 K). Throws std::invalid_argument for K < 2, a reps
/// length mismatch, or any l_i < 1.
QcnnCircuit plan_architecture(int K, PaddingMethod method,
                              const std::vector<int> &reps,
                              const AnsatzSet &ansatz, bool sharing);

/// Closed-form resource counts (ancillas, logical depth, parameter counts
/// for sharing on/off). The sharing flag is recorded but both parameter
/// counts are always filled in.
ResourceReport estimate_resources(int K, PaddingMethod method,
                                  const std::vector<int> &reps,
                                  const AnsatzSet &ansatz, bool sharing);

/// Resource counts measured from a built circuit: depth from the emitted
/// depth steps, ancillas from the wire count, parameters from the template
/// instances and the distinct slots in the program. Must equal
/// estimate_resources field-for-field.
ResourceReport measure_resources(const QcnnCircuit &circuit);

/// Smallest n' >= 0 with n' < n such that (m + n') mod n == 0; the ancilla
/// count that lets an n-qubit convolution layer over m qubits run at the
/// minimum depth n. Throws std::invalid_argument for m < n or n < 2.
int min_ancillas_multiqubit(int m, int n);

/// Rewrites the program through decompose_to_basis, preserving all plan
/// metadata.
QcnnCircuit decompose_circuit(const QcnnCircuit &circuit);

} // namespace qcnn
