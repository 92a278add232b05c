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
 * Forward evaluation, MSE loss, parameter-shift gradients, Adam, and the
 * mini-batch training loop with restarts.
 */
#pragma once

#include "qcnn/datapipe.hpp"
#include "qcnn/exec.hpp"

namespace qcnn {

struct TrainConfig {
    double learning_rate = 0.01;
    int batch_size = 25;
    int epochs = 10;
    int restarts = 10;
    std::uint64_t seed = 0;

    void validate(int train_size) const;
};

struct AdamState {
    std::vector<double> m, v;
    long step = 0;
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

    explicit AdamState(std::size_t size) : m(size, 0.0), v(size, 0.0) {}
};

struct RestartMetrics {
    std::uint64_t seed = 0;
    std::vector<double> epoch_train_loss;
    std::vector<double> epoch_val_accuracy;
    double test_accuracy = 0;
    std::vector<double> final_params;
};

struct Metrics {
    std::vector<RestartMetrics> restarts;
    double mean_test_accuracy = 0;
    double std_test_accuracy = 0; // sample standard deviation
    double wall_seconds = 0;
};

/// <Z> on the measurement wire for one encoded sample.
double forward(const QcnnCircuit &circuit, const ParamStore &params,
               const EncodedSample &sample, const Executor &executor);

/// (1/M) sum |y_i - f_i|^2.
double mse_loss(const std::vector<double> &predictions,
                const std::vector<double> &labels);

/// d<Z>/dtheta by the two-term parameter-shift rule, one +-pi/2 shift pair
/// per gate occurrence, occurrence contributions scaled by the gate's angle
/// multiplier and summed per slot. Requires a basis-compiled circuit.
std::vector<double> grad_expectation_shift(const QcnnCircuit &circuit,
                                           const ParamStore &params,
                                           const EncodedSample &sample,
                                           const Executor &executor,
                                           int jobs = 0);

/// Batch MSE-loss gradient dL/dtheta = (2/M) sum_i (f_i - y_i) df_i/dtheta
/// assembled from per-occurrence parameter shifts.
std::vector<double> grad_parameter_shift(const QcnnCircuit &circuit,
                                         const ParamStore &params,
                                         const std::vector<EncodedSample> &batch,
                                         const Executor &executor,
                                         int jobs = 0,
                                         double *batch_loss = nullptr);

/// Reverse-mode (adjoint) loss gradient for the noiseless executor. Exactly
/// equals grad_parameter_shift (both differentiate the same expectation);
/// used as the fast path inside train().
std::vector<double> grad_adjoint(const QcnnCircuit &circuit,
                                 const ParamStore &params,
                                 const std::vector<EncodedSample> &batch,
                                 int jobs = 0, double *batch_loss = nullptr);

/// Standard Adam update with bias correction.
void adam_step(AdamState &state, ParamStore &params,
               const std::vector<double> &gradient, double learning_rate);

/// Fraction of samples with sign(f) == label (f = 0 counts as +1).
double evaluate_accuracy(const QcnnCircuit &circuit, const ParamStore &params,
                         const std::vector<EncodedSample> &samples,
                         const Executor &executor, int jobs = 0);

/// Runs `restarts` independent trainings (restart r seeds with seed + r and
/// draws its initial parameters i.i.d. uniform from [0, 2pi)), each a
/// deterministic mini-batch loop over `epochs`. Reports per-epoch train
/// loss and validation accuracy, final test accuracy per restart, and the
/// mean / sample-std across restarts. `final_params` (optional) receives the
/// last restart's parameters.
Metrics train(const QcnnCircuit &circuit, const Splits &splits,
              const TrainConfig &config, const Executor &executor,
              int jobs = 0, ParamStore *final_params = nullptr);

} // namespace qcnn
