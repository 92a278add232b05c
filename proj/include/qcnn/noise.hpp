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
 * Hardware noise model: depolarizing and thermal-relaxation channels,
 * device profiles, and noisy circuit execution. Each basis gate is followed
 * by a depolarizing channel on its wires and by thermal relaxation of the
 * gate's duration on every live wire.
 */
#pragma once

#include <functional>
#include <variant>

#include "qcnn/exec.hpp"

namespace qcnn {

/// Average device error rates and timings. `scale` is a sweep multiplier
/// applied to the depolarizing probabilities and gate lengths only.
struct DeviceNoiseProfile {
    double p1 = 0;          // 1-qubit depolarizing probability
    double p2 = 0;          // 2-qubit depolarizing probability
    double t_1q = 0;        // 1-qubit gate length, seconds
    double t_2q = 0;        // 2-qubit gate length, seconds
    double T1 = 1;          // relaxation time, seconds
    double T2 = 1;          // dephasing time, seconds
    double temperature = 0; // kelvin
    double frequency = 5e9; // qubit frequency, hertz (irrelevant at T = 0)
    double scale = 1;

    double p1_eff() const { return p1 * scale; }
    double p2_eff() const { return p2 * scale; }
    double t_1q_eff() const { return t_1q * scale; }
    double t_2q_eff() const { return t_2q * scale; }

    /// Throws ValidationError when scaled probabilities leave [0,1], times
    /// are negative, or T1/T2 are non-positive.
    void validate() const;

    /// Table of IBMQ Jakarta averages used throughout the experiments.
    static DeviceNoiseProfile ibmq_jakarta();
};

/// Excited-state population (1 + exp(2hf / (kB T)))^-1; returns 0 at T = 0.
double p_excited(double temperature_kelvin, double frequency_hertz);

/// Depolarizing channel E(rho) = p I/d + (1-p) rho as Kraus operators over
/// the Pauli basis (4 operators for dim 2, 16 for dim 4).
KrausChannel depolarizing_channel(double p, int dim);

/// Derived thermal-relaxation quantities for gate duration t_gate.
struct ThermalRelaxationParams {
    double eps_T1 = 1, eps_T2 = 1, p_reset = 0, p_e = 0;
    double p_z = 0, p_r0 = 0, p_r1 = 0, p_id = 1;

    static ThermalRelaxationParams from(double T1, double T2, double t_gate,
                                        double p_e);
};

/// Single-qubit Choi matrix (unnormalized, Lambda = sum |i><j| (x) E(|i><j|)).
struct ChoiMap {
    Matrix lambda; // 4x4

    /// PSD within `psd_tol` and Tr_out(Lambda) = I within `tp_tol`.
    void validate(double psd_tol = 1e-10, double tp_tol = 1e-10) const;
};

using ThermalChannel = std::variant<KrausChannel, ChoiMap>;

/// Thermal relaxation for gate duration t_gate: the six-operator Kraus set
/// when T2 <= T1, the Choi matrix otherwise. Throws ValidationError when
/// the derived probabilities leave [0,1].
ThermalChannel thermal_relaxation_channel(double T1, double T2, double t_gate,
                                          double p_e);

/// Kraus operators of a Choi matrix via its eigendecomposition.
KrausChannel kraus_from_choi(const ChoiMap &choi);

/// Reads a device profile JSON file ({p1, p2, t_1q_ns, t_2q_ns, T1_us,
/// T2_us, temperature_K}). Throws FormatError / ValidationError.
DeviceNoiseProfile load_profile(const std::string &path);

/// Returns a copy with the sweep multiplier applied on top of the existing
/// one (p1, p2 and the gate lengths only; T1/T2 unchanged).
DeviceNoiseProfile scale_profile(const DeviceNoiseProfile &profile, double k);

using StepHook = std::function<void(const MixedState &, std::size_t step)>;

/// Runs a basis-compiled circuit in the noisy executor: lifts the input to
/// a density matrix, applies each gate followed by its depolarizing channel
/// and by thermal relaxation on every live wire, and executes trace
/// directives in place. Returns the final state (reduced to the surviving
/// wires); `expectation_out` receives <Z> on the measurement wire. The hook,
/// when set, is called after every instruction.
MixedState noisy_execute(const BoundCircuit &bound, const PureState &input,
                         const DeviceNoiseProfile &profile,
                         double *expectation_out = nullptr,
                         const StepHook &hook = {});

class NoisyExecutor final : public Executor {
  public:
    explicit NoisyExecutor(DeviceNoiseProfile profile)
        : profile_(std::move(profile)) {
        profile_.validate();
    }

    double run(const BoundCircuit &bound,
               const PureState &input) const override {
        double f = 0;
        noisy_execute(bound, input, profile_, &f);
        return f;
    }
    bool is_noiseless() const override { return false; }

    const DeviceNoiseProfile &profile() const { return profile_; }

  private:
    DeviceNoiseProfile profile_;
};

} // namespace qcnn
