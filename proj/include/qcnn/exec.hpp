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
 * Parameter binding and circuit execution. A BoundCircuit caches the
 * concrete gate matrices for one parameter vector so repeated forward
 * passes (and single-occurrence angle shifts) stay cheap.
 */
#pragma once

#include <array>

#include "qcnn/architect.hpp"

namespace qcnn {

/// Values for every parameter slot of a circuit (radians).
struct ParamStore {
    std::vector<double> values;
};

struct BoundInstr {
    bool is_trace = false;
    int trace_wire = -1;
    GateKind kind = GateKind::ID;
    int arity = 1;
    std::array<int, 2> wires{-1, -1};
    std::array<cplx, 16> m{}; // row-major gate matrix
    int op_index = -1;        // index into the source program
};

class BoundCircuit {
  public:
    /// One parameterized single-angle gate in the program; `scale` is the
    /// multiplier applied to the slot value.
    struct Occurrence {
        int instr = 0;
        int slot = 0;
        double scale = 1.0;
    };

    BoundCircuit(const QcnnCircuit &circuit, const ParamStore &params);

    const QcnnCircuit &circuit() const { return *circuit_; }
    const std::vector<BoundInstr> &instrs() const { return instrs_; }
    const std::vector<Occurrence> &occurrences() const { return occurrences_; }

    /// Rebuilds every gate matrix from `params`.
    void rebind(const ParamStore &params);

    /// Rebuilds the matrix of one occurrence with its bound angle shifted by
    /// `delta`; pass delta = 0 to restore it.
    void shift_occurrence(int occurrence_index, double delta,
                          const ParamStore &params);

  private:
    const QcnnCircuit *circuit_;
    std::vector<BoundInstr> instrs_;
    std::vector<Occurrence> occurrences_;
};

/// Runs the program on a pure state, skipping trace directives (discarded
/// wires are never touched again, so deferring the trace is exact), and
/// returns <Z> on the measurement wire. `input` may have fewer qubits than
/// the circuit; missing (ancilla) wires are appended in |0>.
double run_pure(const BoundCircuit &bound, const PureState &input);

/// Expands `input` to the circuit width by appending |0> ancilla wires at
/// the bottom.
PureState lift_input(const PureState &input, int total_qubits);

class Executor {
  public:
    virtual ~Executor() = default;
    virtual double run(const BoundCircuit &bound,
                       const PureState &input) const = 0;
    virtual bool is_noiseless() const = 0;
};

class NoiselessExecutor final : public Executor {
  public:
    double run(const BoundCircuit &bound,
               const PureState &input) const override {
        return run_pure(bound, input);
    }
    bool is_noiseless() const override { return true; }
};

} // namespace qcnn
