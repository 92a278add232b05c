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
 * Command-line harness: `resources`, `train`, and `noise-sweep`
 * subcommands, JSON experiment configs, CSV outputs.
 *
 * Exit codes: 0 ok, 2 usage/config error, 3 missing data file,
 * 4 numerical invariant violation.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcnn/noise.hpp"
#include "qcnn/trainer.hpp"

namespace qcnn {

struct ExecutorConfig {
    bool noisy = false;
    std::string profile_path; // required when noisy
    double scale = 1.0;
};

struct ExperimentConfig {
    DataSource dataset = DataSource::Mnist;
    std::string mnist_images, mnist_labels; // dataset == Mnist
    std::string wdbc_csv;                   // dataset == Wdbc
    std::array<int, 2> label_pair{0, 1};
    PaddingMethod method = PaddingMethod::SingleAncilla;
    std::vector<PaddingMethod> sweep_methods; // noise-sweep cells
    int ansatz = 2;
    bool sharing = false;
    std::vector<int> reps; // empty = all ones
    SplitSpec splits;
    TrainConfig train;
    PadMode encode_pad = PadMode::Zero; // non-classical methods
    ExecutorConfig executor;
    bool noisy_training = false; // sweep: also train under noise
    std::string output_dir = "runs/out";

    int feature_dim() const { return 30; }
    int input_qubits() const; // K = ceil(log2(feature_dim))
};

/// Parses and validates a config file (or a run manifest, whose embedded
/// config is reused). Referenced files must exist; relative data paths are
/// resolved against $QCNN_DATA_DIR when not found locally. Throws
/// ConfigError / MissingDataError before any heavy computation.
ExperimentConfig load_config(const std::string &path);

struct ResourcesOptions {
    std::optional<int> qubits;
    std::optional<std::pair<int, int>> range;
    std::string method = "all";
    std::vector<int> reps; // single value broadcasts
    std::optional<int> ansatz;
    bool sharing = false;
    std::string format = "csv"; // csv | json
};

/// Resource-report rows (Table-style for --qubits, curve data for --range).
int cmd_resources(const ResourcesOptions &options, std::ostream &out);

/// Runs the configured training experiment; writes metrics.csv,
/// manifest.json and params.json under the output directory.
int cmd_train(const ExperimentConfig &config, const std::string &config_path,
              int jobs);

/// Trains per restart, evaluates the test set under the noisy executor at
/// each scale; writes sweep.csv and manifest.json.
int cmd_noise_sweep(const ExperimentConfig &config,
                    const std::string &config_path,
                    const std::vector<double> &scales, int jobs);

/// Full CLI entry point (argument parsing + exit-code mapping).
int run_cli(int argc, char **argv);

/// Builds the circuit and encoded splits for a config (shared by train and
/// sweep paths).
QcnnCircuit build_circuit(const ExperimentConfig &config,
                          PaddingMethod method);
Splits load_splits(const ExperimentConfig &config, PaddingMethod method);

} // namespace qcnn
